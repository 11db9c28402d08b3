//! The relation lattice `M = { x in Z^p : a·x = 0 }`, its length function,
//! and the rational points used by the bound and its validators.

use crate::arith::{
    checked_add, checked_mul, checked_sub, determinant, ext_gcd, gcd, gcd_i128, to_i64,
};
use crate::error::{Error, Result};
use crate::monoid::Monoid;
use crate::rational::{Rational, RationalVector};

/// Coordinate sum of an integer vector.
pub fn ell(x: &[i64]) -> Result<i64> {
    x.iter()
        .try_fold(0i64, |acc, &c| acc.checked_add(c).ok_or(Error::Overflow))
}

fn dot(weights: &[u64], x: &[i64]) -> Result<i128> {
    weights.iter().zip(x).try_fold(0i128, |acc, (&w, &c)| {
        checked_add(acc, checked_mul(w as i128, c as i128)?)
    })
}

/// A basis `m_1, ..., m_{p-1}` of the relation lattice together with the
/// lengths of its vectors and `d = gcd |ℓ(m_j)|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelBasis {
    basis: Vec<Vec<i64>>,
    lengths: Vec<i64>,
    d: u64,
}

impl KernelBasis {
    /// Validates an externally supplied basis: every vector must be a
    /// relation and the family must span the whole lattice.
    pub fn from_vectors(m: &Monoid, basis: Vec<Vec<i64>>) -> Result<Self> {
        let p = m.embedding_dimension();
        if p < 2 {
            return Err(Error::DegenerateRank);
        }
        if basis.len() != p - 1 || basis.iter().any(|v| v.len() != p) {
            return Err(Error::Unsaturated);
        }
        for v in &basis {
            if dot(m.generators(), v)? != 0 {
                return Err(Error::NotARelation);
            }
        }
        if !is_saturated(m, &basis)? {
            return Err(Error::Unsaturated);
        }
        let lengths = basis.iter().map(|v| ell(v)).collect::<Result<Vec<_>>>()?;
        let d = lengths
            .iter()
            .fold(0u64, |acc, &l| gcd(acc, l.unsigned_abs()));
        if d == 0 {
            return Err(Error::ZeroLengths);
        }
        Ok(KernelBasis { basis, lengths, d })
    }

    pub fn vectors(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn lengths(&self) -> &[i64] {
        &self.lengths
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    /// Integer coordinates of `v` in this basis, or `None` if `v` is not in the
    /// lattice. Only meaningful for bases built by [`kernel_basis`], which are
    /// lower staircase: vector `k` has its last nonzero entry at coordinate `k + 1`.
    pub fn coordinates(&self, v: &[i64]) -> Option<Vec<i64>> {
        let p = self.basis.len() + 1;
        if v.len() != p {
            return None;
        }
        let mut rest: Vec<i128> = v.iter().map(|&c| c as i128).collect();
        let mut coeffs = vec![0i64; p - 1];
        for k in (0..p - 1).rev() {
            let pivot = self.basis[k][k + 1] as i128;
            if pivot == 0 || self.basis[k][k + 2..].iter().any(|&c| c != 0) {
                return None;
            }
            if rest[k + 1] % pivot != 0 {
                return None;
            }
            let t = rest[k + 1] / pivot;
            for (r, &b) in rest.iter_mut().zip(&self.basis[k]) {
                *r -= t * b as i128;
            }
            coeffs[k] = i64::try_from(t).ok()?;
        }
        (rest[0] == 0).then_some(coeffs)
    }
}

/// Checks that the signed maximal minors of the basis matrix reproduce the
/// generator vector up to one global sign, which holds exactly when the
/// basis spans the full kernel lattice.
pub fn is_saturated(m: &Monoid, basis: &[Vec<i64>]) -> Result<bool> {
    let a = m.generators();
    let p = a.len();
    let mut cofactors = Vec::with_capacity(p);
    for drop in 0..p {
        let minor: Vec<Vec<i128>> = basis
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != drop)
                    .map(|(_, &c)| c as i128)
                    .collect()
            })
            .collect();
        let det = determinant(&minor)?;
        cofactors.push(if drop % 2 == 0 { det } else { -det });
    }
    let plus = cofactors.iter().zip(a).all(|(&c, &ai)| c == ai as i128);
    let minus = cofactors.iter().zip(a).all(|(&c, &ai)| c == -(ai as i128));
    Ok(plus || minus)
}

/// Staircase basis from iterated extended gcds.
///
/// Vector `k` (for `k = 1..p-1`, zero based) expresses
/// `(g_{k-1}/g_k) a_k` through `a_0..a_{k-1}`, where `g_k = gcd(a_0..a_k)`,
/// then is size-reduced against the earlier vectors.
pub fn kernel_basis(m: &Monoid) -> Result<KernelBasis> {
    let a = m.generators();
    let p = a.len();
    if p < 2 {
        return Err(Error::DegenerateRank);
    }
    let mut bezout: Vec<i128> = vec![1];
    let mut g_prev = a[0] as i128;
    let mut basis: Vec<Vec<i64>> = Vec::with_capacity(p - 1);
    for k in 1..p {
        let ak = a[k] as i128;
        let (g_new, x, y) = ext_gcd(g_prev, ak)?;
        let scale = ak / g_new;
        let mut v = vec![0i128; p];
        for (slot, &c) in v.iter_mut().zip(&bezout) {
            *slot = checked_mul(c, scale)?;
        }
        v[k] = -(g_prev / g_new);
        // reduce coordinate j against the earlier vector whose pivot sits there
        for j in (1..k).rev() {
            let pivot = basis[j - 1][j] as i128;
            let t = v[j].div_euclid(pivot);
            if t != 0 {
                for (slot, &b) in v.iter_mut().zip(&basis[j - 1]) {
                    *slot = checked_sub(*slot, checked_mul(t, b as i128)?)?;
                }
            }
        }
        basis.push(v.into_iter().map(to_i64).collect::<Result<_>>()?);

        let mut next = Vec::with_capacity(k + 1);
        for &c in &bezout {
            next.push(checked_mul(c, x)?);
        }
        next.push(y);
        bezout = next;
        g_prev = g_new;
    }
    if !is_saturated(m, &basis)? {
        return Err(Error::Unsaturated);
    }
    KernelBasis::from_vectors(m, basis)
}

/// `min Δ(S)`: gcd of the absolute lengths of the basis vectors.
pub fn min_delta(kb: &KernelBasis) -> Result<u64> {
    let d = kb
        .lengths
        .iter()
        .fold(0u64, |acc, &l| gcd(acc, l.unsigned_abs()));
    if d == 0 {
        Err(Error::ZeroLengths)
    } else {
        Ok(d)
    }
}

/// A relation `v` with `ℓ(v) = d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthIncreaseVector {
    pub v: Vec<i64>,
    pub coefficients: Vec<i64>,
}

pub fn length_increase_vector(kb: &KernelBasis) -> Result<LengthIncreaseVector> {
    let n = kb.basis.len();
    let p = n + 1;
    // running Bezout combination of the lengths seen so far
    let mut g = 0i128;
    let mut u = vec![0i128; n];
    for (j, &l) in kb.lengths.iter().enumerate() {
        let (g_new, x, y) = ext_gcd(g, l as i128)?;
        for c in u.iter_mut().take(j) {
            *c = checked_mul(*c, x)?;
        }
        u[j] = y;
        g = g_new;
    }
    debug_assert_eq!(g, kb.d as i128);
    let mut v = vec![0i128; p];
    for (coef, vec) in u.iter().zip(&kb.basis) {
        for (slot, &b) in v.iter_mut().zip(vec) {
            *slot = checked_add(*slot, checked_mul(*coef, b as i128)?)?;
        }
    }
    Ok(LengthIncreaseVector {
        v: v.into_iter().map(to_i64).collect::<Result<_>>()?,
        coefficients: u.into_iter().map(to_i64).collect::<Result<_>>()?,
    })
}

/// Rational points attached to a monoid, a value of `d` and a chosen `N_S`.
///
/// Indices passed to the methods are one based, matching `a_1, ..., a_p`.
#[derive(Debug, Clone)]
pub struct Geometry {
    generators: Vec<u64>,
    d: u64,
    n_s: u64,
}

impl Geometry {
    pub fn new(m: &Monoid, d: u64, n_s: u64) -> Self {
        Geometry {
            generators: m.generators().to_vec(),
            d,
            n_s,
        }
    }

    fn p(&self) -> usize {
        self.generators.len()
    }

    fn a(&self, i: usize) -> i128 {
        self.generators[i - 1] as i128
    }

    /// `X_i(s) = (s / a_i) e_i`.
    pub fn x(&self, i: usize, s: u64) -> Result<RationalVector> {
        Ok(RationalVector::axis(
            self.p(),
            i - 1,
            Rational::new(s as i128, self.a(i))?,
        ))
    }

    /// `P_i(s)`: the point on the segment `X_1(s) X_p(s)` with the same
    /// length as `X_i(s)`.
    pub fn p_point(&self, i: usize, s: u64) -> Result<RationalVector> {
        let p = self.p();
        let (a1, ai, ap) = (self.a(1), self.a(i), self.a(p));
        let s = s as i128;
        let den = checked_mul(ai, a1 - ap)?;
        let mut v = RationalVector::zero(p);
        v.0[0] = Rational::new(checked_mul(s, ai - ap)?, den)?;
        v.0[p - 1] = Rational::new(checked_mul(s, a1 - ai)?, den)?;
        Ok(v)
    }

    /// `h = (d / (a_p - a_1)) (a_p e_1 - a_1 e_p)`.
    pub fn h(&self) -> Result<RationalVector> {
        let p = self.p();
        let (a1, ap) = (self.a(1), self.a(p));
        let d = self.d as i128;
        let mut v = RationalVector::zero(p);
        v.0[0] = Rational::new(checked_mul(d, ap)?, ap - a1)?;
        v.0[p - 1] = Rational::new(-checked_mul(d, a1)?, ap - a1)?;
        Ok(v)
    }

    /// Primitive relation of length zero supported on coordinates `1, i, p`.
    pub fn q(&self, i: usize) -> Result<Vec<i64>> {
        let p = self.p();
        if p < 3 {
            return Err(Error::NotApplicable("q_i"));
        }
        if !(2..p).contains(&i) {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: p - 1,
            });
        }
        let (a1, ai, ap) = (self.a(1), self.a(i), self.a(p));
        let (c1, ci, cp) = (ai - ap, ap - a1, a1 - ai);
        let g = gcd_i128(gcd_i128(c1, ci), cp);
        let mut v = vec![0i64; p];
        v[0] = to_i64(c1 / g)?;
        v[i - 1] = to_i64(ci / g)?;
        v[p - 1] = to_i64(cp / g)?;
        Ok(v)
    }

    /// `w = P_2(N_S) - X_1(N_S)`.
    pub fn w(&self) -> Result<RationalVector> {
        self.p_point(2, self.n_s)?.try_sub(&self.x(1, self.n_s)?)
    }

    /// `w' = P_{p-1}(N_S) - X_p(N_S)`.
    pub fn w_prime(&self) -> Result<RationalVector> {
        let p = self.p();
        self.p_point(p - 1, self.n_s)?
            .try_sub(&self.x(p, self.n_s)?)
    }

    /// `R(s) = P_2(s) + h`.
    pub fn r(&self, s: u64) -> Result<RationalVector> {
        self.p_point(2, s)?.try_add(&self.h()?)
    }

    /// `R'(s) = P_{p-1}(s) - h`.
    pub fn r_prime(&self, s: u64) -> Result<RationalVector> {
        self.p_point(self.p() - 1, s)?.try_sub(&self.h()?)
    }
}

/// All geometric quantities at one element `s`, with `w`, `w'` taken at `N_S`.
#[derive(Debug, Clone)]
pub struct GeometryRecord {
    pub x: Vec<RationalVector>,
    pub p: Vec<RationalVector>,
    pub h: RationalVector,
    /// `(i, q_i)` for `i = 2..p-1`.
    pub q: Vec<(usize, Vec<i64>)>,
    pub w: RationalVector,
    pub w_prime: RationalVector,
    pub r: RationalVector,
    pub r_prime: RationalVector,
}

pub fn geometry(m: &Monoid, d: u64, s: u64, n_s: u64) -> Result<GeometryRecord> {
    let p = m.embedding_dimension();
    if p < 2 {
        return Err(Error::DegenerateRank);
    }
    let g = Geometry::new(m, d, n_s);
    let q = if p >= 3 {
        (2..p).map(|i| Ok((i, g.q(i)?))).collect::<Result<_>>()?
    } else {
        Vec::new()
    };
    Ok(GeometryRecord {
        x: (1..=p).map(|i| g.x(i, s)).collect::<Result<_>>()?,
        p: (1..=p).map(|i| g.p_point(i, s)).collect::<Result<_>>()?,
        h: g.h()?,
        q,
        w: g.w()?,
        w_prime: g.w_prime()?,
        r: g.r(s)?,
        r_prime: g.r_prime(s)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i128, d: i128) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn lengths_of_worked_example_relations() {
        assert_eq!(ell(&[-13, 1, 4, 2]).unwrap(), -6);
        assert_eq!(ell(&[-9, 0, 5, 0]).unwrap(), -4);
        assert_eq!(ell(&[-7, 0, 0, 3]).unwrap(), -4);
        assert_eq!(ell(&[0, 0, 0]).unwrap(), 0);
    }

    #[test]
    fn worked_example_basis_is_accepted() {
        let m = Monoid::new(&[15, 17, 27, 35]).unwrap();
        let kb = KernelBasis::from_vectors(
            &m,
            vec![vec![-13, 1, 4, 2], vec![-9, 0, 5, 0], vec![-7, 0, 0, 3]],
        )
        .unwrap();
        assert_eq!(min_delta(&kb).unwrap(), 2);
        for v in kb.vectors() {
            assert!(kernel_basis(&m).unwrap().coordinates(v).is_some());
        }
    }

    #[test]
    fn sublattice_is_rejected() {
        let m = Monoid::new(&[4, 6, 15]).unwrap();
        // (6,-4,0) = 2·(3,-2,0) spans an index-2 sublattice
        let err = KernelBasis::from_vectors(&m, vec![vec![6, -4, 0], vec![0, 5, -2]]);
        assert_eq!(err, Err(Error::Unsaturated));
        let err = KernelBasis::from_vectors(&m, vec![vec![1, 0, 0], vec![0, 5, -2]]);
        assert_eq!(err, Err(Error::NotARelation));
    }

    #[test]
    fn small_bases() {
        let m = Monoid::new(&[4, 6, 15]).unwrap();
        let kb = kernel_basis(&m).unwrap();
        assert!(kb.coordinates(&[3, -2, 0]).is_some());
        assert!(kb.coordinates(&[0, 5, -2]).is_some());
        assert!(kb.coordinates(&[1, 0, 0]).is_none());
        assert_eq!(min_delta(&kb).unwrap(), 1);

        let kb = kernel_basis(&Monoid::new(&[2, 3]).unwrap()).unwrap();
        let v = &kb.vectors()[0];
        assert!(v == &vec![3, -2] || v == &vec![-3, 2], "{v:?}");
        assert_eq!(
            kernel_basis(&Monoid::new(&[1]).unwrap()),
            Err(Error::DegenerateRank)
        );
    }

    #[test]
    fn two_generators_give_their_difference() {
        for &(a, b) in &[(2u64, 3u64), (5, 7), (11, 30), (37, 59)] {
            let kb = kernel_basis(&Monoid::new(&[a, b]).unwrap()).unwrap();
            assert_eq!(min_delta(&kb).unwrap(), b - a);
        }
    }

    #[test]
    fn length_increase_vector_invariants() {
        for gens in [
            &[15u64, 17, 27, 35][..],
            &[2, 3],
            &[4, 6, 15],
            &[10, 17, 19, 25, 31],
        ] {
            let m = Monoid::new(gens).unwrap();
            let kb = kernel_basis(&m).unwrap();
            let liv = length_increase_vector(&kb).unwrap();
            assert_eq!(dot(m.generators(), &liv.v).unwrap(), 0);
            assert_eq!(ell(&liv.v).unwrap(), kb.d() as i64);
        }
        // the combination u = (-1, 1, 0) of the worked-example basis
        let v: Vec<i64> = [-13, 1, 4, 2]
            .iter()
            .zip([-9, 0, 5, 0])
            .map(|(x, y)| y - x)
            .collect();
        assert_eq!(v, vec![4, -1, 1, -2]);
        assert_eq!(15 * 4 - 17 + 27 - 70, 0);
        assert_eq!(ell(&v).unwrap(), 2);
    }

    #[test]
    fn worked_example_geometry() {
        let m = Monoid::new(&[15, 17, 27, 35]).unwrap();
        let g = Geometry::new(&m, 2, 1452);
        assert_eq!(g.q(2).unwrap(), vec![-9, 10, 0, -1]);
        assert_eq!(
            g.h().unwrap(),
            RationalVector(vec![q(7, 2), q(0, 1), q(0, 1), q(-3, 2)])
        );
        assert_eq!(g.h().unwrap().ell().unwrap(), Rational::from_int(2));
        for i in 2..4 {
            let qi = g.q(i).unwrap();
            assert_eq!(ell(&qi).unwrap(), 0);
            assert_eq!(dot(m.generators(), &qi).unwrap(), 0);
        }
        assert_eq!(g.q(1), Err(Error::IndexOutOfRange { index: 1, max: 3 }));
    }

    #[test]
    fn points_at_zero_vanish() {
        let m = Monoid::new(&[4, 6, 15]).unwrap();
        let rec = geometry(&m, 1, 0, 78).unwrap();
        for v in rec.x.iter().chain(&rec.p) {
            assert_eq!(v, &RationalVector::zero(3));
        }
    }

    #[test]
    fn point_lengths_and_hyperplane() {
        let m = Monoid::new(&[15, 17, 27, 35]).unwrap();
        let a = m.generators();
        for s in [0u64, 1, 100, 1452, 2000] {
            let rec = geometry(&m, 2, s, 1452).unwrap();
            let first = rec.x[0].ell().unwrap();
            let last = rec.x[3].ell().unwrap();
            for i in 0..4 {
                let li = rec.p[i].ell().unwrap();
                assert_eq!(li, rec.x[i].ell().unwrap());
                assert_eq!(li, q(s as i128, a[i] as i128));
                assert!(first >= li && li >= last);
                assert_eq!(rec.p[i].dot_int(a).unwrap(), Rational::from(s));
            }
            assert_eq!(rec.r.dot_int(a).unwrap(), Rational::from(s));
        }
        let rec = geometry(&m, 2, 1452, 1452).unwrap();
        assert!(rec.w.ell().unwrap().is_negative());
        assert!(rec.w_prime.ell().unwrap() > Rational::ZERO);
    }
}
