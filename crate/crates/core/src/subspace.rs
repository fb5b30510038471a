//! Echelon spans and graded subspaces.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{is_zero_vec, Field};
use crate::modp::Fp;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(b: u8) -> Parity {
        if b & 1 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn add(self, o: Parity) -> Parity {
        Parity::from_bit(self.bit() ^ o.bit())
    }

    /// `true` when `(-1)^{ab}` is `-1`.
    pub fn sign_flip(self, o: Parity) -> bool {
        self.is_odd() && o.is_odd()
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Parity of a vector if it is homogeneous; `None` for mixed support.
/// The zero vector counts as even.
pub fn homogeneous_parity<F: Field>(v: &[F], parities: &[Parity]) -> Option<Parity> {
    let mut seen = None;
    for (x, &p) in v.iter().zip(parities) {
        if x.is_zero() {
            continue;
        }
        match seen {
            None => seen = Some(p),
            Some(q) if q != p => return None,
            _ => {}
        }
    }
    Some(seen.unwrap_or(Parity::Even))
}

/// Component of `v` supported on coordinates of parity `p`.
pub fn component<F: Field>(v: &[F], parities: &[Parity], p: Parity) -> Vec<F> {
    v.iter()
        .zip(parities)
        .map(|(x, &q)| if q == p { x.clone() } else { F::zero(&x.ctx()) })
        .collect()
}

/// A span kept as a fully reduced echelon basis, grown one vector at a time.
///
/// Each row has a 1 in its pivot column and every other row is 0 there, so a
/// vector of the span has its coordinates sitting at the pivot positions.
#[derive(Clone, PartialEq, Eq)]
pub struct Span<F: Field> {
    n: usize,
    ctx: F::Ctx,
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Span<F> {
    pub fn new(ctx: &F::Ctx, n: usize) -> Self {
        Span { n, ctx: ctx.clone(), rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_vectors(ctx: &F::Ctx, n: usize, vs: &[Vec<F>]) -> Result<Self> {
        let mut s = Self::new(ctx, n);
        for v in vs {
            s.check_len(v)?;
            s.insert(v.clone());
        }
        Ok(s)
    }

    fn check_len(&self, v: &[F]) -> Result<()> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: v.len() });
        }
        Ok(())
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    /// Residual of `v` after clearing all pivot columns.
    pub fn reduce(&self, mut v: Vec<F>) -> Vec<F> {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    x.sub_mul(&c, r);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[F]) -> bool {
        is_zero_vec(&self.reduce(v.to_vec()))
    }

    /// Adds `v`; returns the new normalized basis row if the span grew.
    pub fn insert(&mut self, v: Vec<F>) -> Option<&Vec<F>> {
        let mut v = self.reduce(v);
        let q = v.iter().position(|x| !x.is_zero())?;
        let inv = v[q].inverse().expect("nonzero");
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = x.times(&inv);
            }
        }
        for row in self.rows.iter_mut() {
            if row[q].is_zero() {
                continue;
            }
            let c = row[q].clone();
            for (x, y) in row.iter_mut().zip(&v) {
                if !y.is_zero() {
                    x.sub_mul(&c, y);
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(q);
        self.rows.last()
    }

    /// Basis rows in insertion order.
    pub fn rows(&self) -> &[Vec<F>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The canonical reduced row-echelon basis (rows sorted by pivot).
    pub fn echelon_basis(&self) -> Vec<Vec<F>> {
        let mut idx: Vec<usize> = (0..self.rows.len()).collect();
        idx.sort_by_key(|&i| self.pivots[i]);
        idx.into_iter().map(|i| self.rows[i].clone()).collect()
    }

    pub fn sorted_pivots(&self) -> Vec<usize> {
        let mut p = self.pivots.clone();
        p.sort_unstable();
        p
    }

    /// Coordinates of `v` with respect to `rows()`, or `None` if outside.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        let coords: Vec<F> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (c, row) in coords.iter().zip(&self.rows) {
            for (x, r) in residual.iter_mut().zip(row) {
                if !r.is_zero() {
                    x.sub_mul(c, r);
                }
            }
        }
        is_zero_vec(&residual).then_some(coords)
    }

    pub fn is_subspace_of(&self, other: &Span<F>) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }
}

impl<F: Field> fmt::Debug for Span<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.echelon_basis()).finish()
    }
}

/// A subspace spanned by homogeneous vectors, stored as one echelon block per
/// parity.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedSubspace<F: Field> {
    parities: Vec<Parity>,
    even: Span<F>,
    odd: Span<F>,
}

impl<F: Field> GradedSubspace<F> {
    pub fn zero(ctx: &F::Ctx, parities: &[Parity]) -> Self {
        let n = parities.len();
        GradedSubspace { parities: parities.to_vec(), even: Span::new(ctx, n), odd: Span::new(ctx, n) }
    }

    pub fn full(ctx: &F::Ctx, parities: &[Parity]) -> Self {
        let mut s = Self::zero(ctx, parities);
        for i in 0..parities.len() {
            s.insert(crate::field::unit_vec(ctx, parities.len(), i)).expect("unit vectors are homogeneous");
        }
        s
    }

    /// Span of homogeneous vectors; mixed vectors are rejected.
    pub fn from_homogeneous(ctx: &F::Ctx, parities: &[Parity], vs: &[Vec<F>]) -> Result<Self> {
        let mut s = Self::zero(ctx, parities);
        for v in vs {
            s.insert(v.clone())?;
        }
        Ok(s)
    }

    /// Smallest graded subspace containing the vectors (span of all their
    /// homogeneous components).
    pub fn graded_hull(ctx: &F::Ctx, parities: &[Parity], vs: &[Vec<F>]) -> Result<Self> {
        let mut s = Self::zero(ctx, parities);
        for v in vs {
            s.check_len(v)?;
            for p in [Parity::Even, Parity::Odd] {
                s.insert(component(v, parities, p))?;
            }
        }
        Ok(s)
    }

    fn check_len(&self, v: &[F]) -> Result<()> {
        if v.len() != self.parities.len() {
            return Err(Error::DimensionMismatch { expected: self.parities.len(), got: v.len() });
        }
        Ok(())
    }

    /// Inserts a homogeneous vector; returns whether the subspace grew.
    pub fn insert(&mut self, v: Vec<F>) -> Result<bool> {
        self.check_len(&v)?;
        match homogeneous_parity(&v, &self.parities) {
            None => Err(Error::BadParameter("vector is not homogeneous".into())),
            Some(Parity::Even) => Ok(self.even.insert(v).is_some()),
            Some(Parity::Odd) => Ok(self.odd.insert(v).is_some()),
        }
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    pub fn ambient_dim(&self) -> usize {
        self.parities.len()
    }

    pub fn dim(&self) -> usize {
        self.even.dim() + self.odd.dim()
    }

    pub fn even_dim(&self) -> usize {
        self.even.dim()
    }

    pub fn odd_dim(&self) -> usize {
        self.odd.dim()
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.even_dim(), self.odd_dim())
    }

    pub fn block(&self, p: Parity) -> &Span<F> {
        match p {
            Parity::Even => &self.even,
            Parity::Odd => &self.odd,
        }
    }

    pub fn even_basis(&self) -> Vec<Vec<F>> {
        self.even.echelon_basis()
    }

    pub fn odd_basis(&self) -> Vec<Vec<F>> {
        self.odd.echelon_basis()
    }

    /// Even echelon basis followed by odd echelon basis.
    pub fn basis(&self) -> Vec<Vec<F>> {
        let mut b = self.even_basis();
        b.extend(self.odd_basis());
        b
    }

    /// Parities matching `basis()`.
    pub fn basis_parities(&self) -> Vec<Parity> {
        let mut p = vec![Parity::Even; self.even_dim()];
        p.extend(vec![Parity::Odd; self.odd_dim()]);
        p
    }

    /// Pivot column of each vector of `basis()`, in the same order.
    pub fn basis_pivots(&self) -> Vec<usize> {
        let mut p = self.even.sorted_pivots();
        p.extend(self.odd.sorted_pivots());
        p
    }

    /// Coordinates of `v` with respect to `basis()`, or `None` if outside.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        if v.len() != self.parities.len() {
            return None;
        }
        self.contains(v).ok()?.then(|| self.basis_pivots().into_iter().map(|p| v[p].clone()).collect())
    }

    pub fn contains(&self, v: &[F]) -> Result<bool> {
        self.check_len(v)?;
        let e = self.even.reduce(component(v, &self.parities, Parity::Even));
        if !is_zero_vec(&e) {
            return Ok(false);
        }
        Ok(is_zero_vec(&self.odd.reduce(component(v, &self.parities, Parity::Odd))))
    }

    fn check_ambient(&self, o: &Self) -> Result<()> {
        if self.parities != o.parities {
            return Err(Error::DimensionMismatch { expected: self.parities.len(), got: o.parities.len() });
        }
        Ok(())
    }

    pub fn sum(&self, o: &Self) -> Result<Self> {
        self.check_ambient(o)?;
        let mut s = self.clone();
        for v in o.even.rows().iter().chain(o.odd.rows()) {
            s.insert(v.clone())?;
        }
        Ok(s)
    }

    /// Span of the non-pivot coordinate vectors of each parity block.
    pub fn complement(&self) -> Self {
        let ctx = self.even.ctx().clone();
        let mut s = Self::zero(&ctx, &self.parities);
        for (i, &p) in self.parities.iter().enumerate() {
            if !self.block(p).pivots().contains(&i) {
                s.insert(crate::field::unit_vec(&ctx, self.parities.len(), i)).expect("homogeneous");
            }
        }
        s
    }

    pub fn intersection_dim(&self, o: &Self) -> Result<usize> {
        Ok(self.dim() + o.dim() - self.sum(o)?.dim())
    }

    pub fn is_subspace_of(&self, o: &Self) -> bool {
        self.even.is_subspace_of(&o.even) && self.odd.is_subspace_of(&o.odd)
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim()
    }
}

impl GradedSubspace<Scalar> {
    /// Entrywise image mod p; fails if a denominator vanishes.
    pub fn reduce_mod_p(&self, p: u64) -> Result<GradedSubspace<Fp>> {
        let mut out = GradedSubspace::zero(&p, &self.parities);
        for v in self.basis() {
            let w = v.iter().map(|x| Fp::reduce(x, p)).collect::<Result<Vec<_>>>()?;
            out.insert(w)?;
        }
        Ok(out)
    }
}

impl<F: Field> fmt::Debug for GradedSubspace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedSubspace").field("even", &self.even).field("odd", &self.odd).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    const EVEN3: [Parity; 3] = [Parity::Even; 3];

    #[test]
    fn containment_examples() {
        let s = GradedSubspace::from_homogeneous(&(), &EVEN3, &[ints(&[1, 0, 0]), ints(&[0, 1, 0])]).unwrap();
        assert!(s.contains(&ints(&[0, 0, 0])).unwrap());
        assert!(s.contains(&ints(&[1, 1, 0])).unwrap());
        assert!(!s.contains(&ints(&[0, 0, 1])).unwrap());
        assert!(s.contains(&ints(&[1, 1])).is_err());
    }

    #[test]
    fn sum_examples() {
        let par = [Parity::Even, Parity::Even];
        let a = GradedSubspace::from_homogeneous(&(), &par, &[ints(&[1, 0])]).unwrap();
        let b = GradedSubspace::from_homogeneous(&(), &par, &[ints(&[0, 1])]).unwrap();
        assert_eq!(a.sum(&a).unwrap(), a);
        assert_eq!(a.sum(&GradedSubspace::zero(&(), &par)).unwrap(), a);
        assert!(a.sum(&b).unwrap().is_full());
    }

    #[test]
    fn complement_examples() {
        let full = GradedSubspace::<Scalar>::full(&(), &EVEN3);
        assert_eq!(full.complement().dim(), 0);
        assert_eq!(GradedSubspace::<Scalar>::zero(&(), &EVEN3).complement().dim(), 3);
        let s = GradedSubspace::from_homogeneous(&(), &EVEN3, &[ints(&[1, 1, 0])]).unwrap();
        // pivot of (1,1,0) is column 0, so the complement is spanned by e1, e2
        let c = s.complement();
        assert_eq!(c.basis(), vec![ints(&[0, 1, 0]), ints(&[0, 0, 1])]);
    }

    #[test]
    fn mixed_vectors_rejected() {
        let par = [Parity::Even, Parity::Odd];
        assert!(GradedSubspace::from_homogeneous(&(), &par, &[ints(&[1, 1])]).is_err());
        let hull = GradedSubspace::graded_hull(&(), &par, &[ints(&[1, 1])]).unwrap();
        assert_eq!(hull.dims(), (1, 1));
    }

    fn arb_graded() -> impl Strategy<Value = (Vec<Parity>, Vec<Vec<Scalar>>)> {
        (proptest::collection::vec(any::<bool>(), 5), proptest::collection::vec(proptest::collection::vec(-2i64..3, 5), 0..5))
            .prop_map(|(bits, vs)| {
                let par: Vec<Parity> = bits.into_iter().map(|b| if b { Parity::Odd } else { Parity::Even }).collect();
                let vs = vs.into_iter().map(|v| v.into_iter().map(Scalar::from_int).collect()).collect();
                (par, vs)
            })
    }

    proptest! {
        #[test]
        fn complement_is_a_direct_summand((par, vs) in arb_graded()) {
            let s = GradedSubspace::graded_hull(&(), &par, &vs).unwrap();
            let c = s.complement();
            prop_assert_eq!(s.sum(&c).unwrap().dim(), par.len());
            prop_assert_eq!(s.intersection_dim(&c).unwrap(), 0);
        }

        #[test]
        fn coordinates_reconstruct((par, vs) in arb_graded(), coeffs in proptest::collection::vec(-3i64..4, 5)) {
            let s = Span::from_vectors(&(), par.len(), &vs).unwrap();
            let mut v = vec![Scalar::ZERO; par.len()];
            for (row, c) in s.rows().iter().zip(&coeffs) {
                crate::field::axpy(&mut v, &Scalar::from_int(*c), row);
            }
            let got = s.coordinates(&v).unwrap();
            for (g, c) in got.iter().zip(&coeffs) {
                prop_assert_eq!(g.clone(), Scalar::from_int(*c));
            }
        }
    }
}
