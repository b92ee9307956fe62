//! Integral quadratic lattices given by Gram matrices, with their invariants,
//! duals, even sublattices and finite-index integral overlattices.

use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::gcd_all;
use crate::linalg::{self, IntMatrix, RatMatrix};
use crate::{Error, Result};

/// Symmetric integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GramMatrix {
    entries: IntMatrix,
}

impl GramMatrix {
    pub fn new(entries: IntMatrix) -> Result<Self> {
        let n = entries.len();
        if entries.iter().any(|row| row.len() != n) {
            return Err(Error::NotSquare);
        }
        for i in 0..n {
            for j in i + 1..n {
                if entries[i][j] != entries[j][i] {
                    return Err(Error::NotSymmetric(i, j));
                }
            }
        }
        Ok(Self { entries })
    }

    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn diagonal(d: &[i64]) -> Self {
        let n = d.len();
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { BigInt::from(d[i]) } else { BigInt::zero() })
                    .collect()
            })
            .collect();
        Self { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &IntMatrix {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i][j]
    }

    pub fn det(&self) -> BigInt {
        linalg::det(&self.entries)
    }

    /// Entries as `i64`, when they fit.
    pub fn to_i64(&self) -> Option<Vec<Vec<i64>>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|x| x.to_i64()).collect())
            .collect()
    }
}

impl Serialize for GramMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self
            .entries
            .iter()
            .map(|row| row.iter().map(|x| x.to_string()).collect())
            .collect();
        rows.serialize(s)
    }
}

/// Smith-normal-form diagonal of a non-degenerate Gram matrix.
pub fn invariant_factors(g: &GramMatrix) -> Result<Vec<BigInt>> {
    let s = linalg::smith(g.entries());
    if s.diag.iter().any(|d| d.is_zero()) {
        return Err(Error::DegenerateLattice);
    }
    Ok(s.diag)
}

/// Numbers of positive and negative squares.
pub fn signature(g: &GramMatrix) -> Result<(usize, usize)> {
    let (p, q, z) = linalg::inertia(&linalg::to_rat(g.entries()));
    if z > 0 {
        return Err(Error::DegenerateLattice);
    }
    Ok((p, q))
}

/// Non-degenerate integral lattice with eagerly computed invariants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadLattice {
    gram: GramMatrix,
    signature: (usize, usize),
    #[serde(serialize_with = "crate::report::big_str")]
    discriminant: BigInt,
    #[serde(serialize_with = "crate::report::big_vec")]
    invariant_factors: Vec<BigInt>,
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<String>,
}

impl QuadLattice {
    pub fn new(gram: GramMatrix) -> Result<Self> {
        if gram.dim() == 0 {
            return Err(Error::DegenerateLattice);
        }
        let discriminant = gram.det();
        if discriminant.is_zero() {
            return Err(Error::DegenerateLattice);
        }
        let signature = signature(&gram)?;
        let invariant_factors = invariant_factors(&gram)?;
        Ok(Self { gram, signature, discriminant, invariant_factors, name: None })
    }

    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::new(GramMatrix::from_i64(rows)?)
    }

    pub fn diagonal(d: &[i64]) -> Result<Self> {
        Self::new(GramMatrix::diagonal(d))
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn gram(&self) -> &GramMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.dim()
    }

    pub fn signature(&self) -> (usize, usize) {
        self.signature
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.discriminant
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    /// Largest invariant factor, the exponent of the discriminant group.
    pub fn exponent(&self) -> &BigInt {
        self.invariant_factors.last().expect("rank is positive")
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.signature == (self.rank() - 1, 1)
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram.get(i, i).is_even())
    }

    /// The lattice with the form multiplied by `k`.
    pub fn scaled(&self, k: i64) -> Result<Self> {
        let k = BigInt::from(k);
        Self::new(GramMatrix::new(
            self.gram
                .entries()
                .iter()
                .map(|row| row.iter().map(|x| x * &k).collect())
                .collect(),
        )?)
    }

    pub fn inner(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        let g = self.gram.entries();
        let mut s = BigInt::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let gy = g[i].iter().zip(y).fold(BigInt::zero(), |acc, (a, b)| acc + a * b);
            s += xi * gy;
        }
        s
    }

    pub fn norm(&self, x: &[BigInt]) -> BigInt {
        self.inner(x, x)
    }

    pub fn inner_rat(&self, x: &[BigRational], y: &[BigRational]) -> BigRational {
        let g = self.gram.entries();
        let mut s = BigRational::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !g[i][j].is_zero() && !yj.is_zero() {
                    s += xi * yj * BigRational::from_integer(g[i][j].clone());
                }
            }
        }
        s
    }

    /// `G·x`: the inner products of `x` with the basis vectors.
    pub fn gram_times(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.gram
            .entries()
            .iter()
            .map(|row| row.iter().zip(x).fold(BigInt::zero(), |acc, (a, b)| acc + a * b))
            .collect()
    }

    /// The sublattice spanned by the columns of `basis` (integer coordinates).
    pub fn sublattice(&self, basis: &IntMatrix) -> Result<Self> {
        Self::new(GramMatrix::new(linalg::congruence_int(self.gram.entries(), basis))?)
    }
}

/// `L*` described over the basis of `L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualLattice {
    /// Columns are the dual basis vectors in coordinates of `L`.
    pub basis_change: RatMatrix,
    pub index: BigInt,
    /// Gram matrix of the dual basis; equal to `basis_change` for a symmetric form.
    pub gram: RatMatrix,
}

/// Dual lattice with an echelon-form basis, so that a unimodular lattice
/// returns the identity.
pub fn dual_lattice(l: &QuadLattice) -> DualLattice {
    let inv = linalg::inverse(&linalg::to_rat(l.gram().entries())).expect("non-degenerate");
    let basis_change = rational_span_basis(&linalg::transpose(&inv));
    let gram = linalg::congruence_rat(&linalg::to_rat(l.gram().entries()), &basis_change);
    DualLattice { basis_change, index: l.discriminant().abs(), gram }
}

/// Echelon basis (as columns) of the ℤ-span of rational vectors.
fn rational_span_basis(vectors: &[Vec<BigRational>]) -> RatMatrix {
    let denom = vectors
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let scaled: IntMatrix = vectors
        .iter()
        .map(|v| v.iter().map(|q| (q * BigRational::from_integer(denom.clone())).to_integer()).collect())
        .collect();
    let rows: RatMatrix = linalg::row_basis(&scaled)
        .iter()
        .map(|r| r.iter().map(|x| BigRational::new(x.clone(), denom.clone())).collect())
        .collect();
    linalg::transpose(&rows)
}

/// A sublattice with its basis (columns, integer coordinates) and index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sublattice {
    pub lattice: QuadLattice,
    pub basis: IntMatrix,
    pub index: BigInt,
}

/// The kernel of `x ↦ (x,x) mod 2`.
pub fn even_sublattice(l: &QuadLattice) -> Sublattice {
    let n = l.rank();
    let g = l.gram().entries();
    let odd: Vec<bool> = (0..n).map(|i| g[i][i].is_odd()).collect();
    let Some(pivot) = odd.iter().position(|&c| c) else {
        return Sublattice { lattice: l.clone(), basis: linalg::identity(n), index: BigInt::one() };
    };
    let mut basis = linalg::identity(n);
    basis[pivot][pivot] = BigInt::from(2);
    for j in 0..n {
        if j == pivot || !odd[j] {
            continue;
        }
        // e_j ± e_pivot, whichever is shorter
        let plus = &g[j][j] + &g[pivot][pivot] + BigInt::from(2) * &g[j][pivot];
        let minus = &g[j][j] + &g[pivot][pivot] - BigInt::from(2) * &g[j][pivot];
        basis[pivot][j] = if plus.abs() <= minus.abs() { BigInt::one() } else { -BigInt::one() };
    }
    let lattice = l.sublattice(&basis).expect("finite-index sublattice is non-degenerate");
    Sublattice { lattice, basis, index: BigInt::from(2) }
}

/// An integral lattice `L ⊆ M ⊆ L*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Overlattice {
    /// Columns are the basis vectors of `M` in coordinates of `L`.
    pub basis_change: RatMatrix,
    pub index: BigInt,
    pub gram: GramMatrix,
}

impl Overlattice {
    pub fn lattice(&self) -> QuadLattice {
        QuadLattice::new(self.gram.clone()).expect("overlattice is non-degenerate")
    }
}

/// Discriminant group `L*/L ≅ ⊕ ℤ/dᵢ` with explicit generators.
struct DiscriminantGroup {
    orders: Vec<BigInt>,
    /// Generator vectors in coordinates of `L`.
    gens: Vec<Vec<BigRational>>,
}

impl DiscriminantGroup {
    fn new(l: &QuadLattice) -> Self {
        let s = linalg::smith(l.gram().entries());
        let n = l.rank();
        let mut orders = Vec::new();
        let mut gens = Vec::new();
        for (i, d) in s.diag.iter().enumerate() {
            if d.is_one() {
                continue;
            }
            orders.push(d.clone());
            gens.push((0..n).map(|r| BigRational::new(s.right[r][i].clone(), d.clone())).collect());
        }
        Self { orders, gens }
    }

    fn vector(&self, coeffs: &[u64]) -> Vec<BigRational> {
        let n = self.gens.first().map_or(0, |g| g.len());
        let mut v = vec![BigRational::zero(); n];
        for (c, g) in coeffs.iter().zip(&self.gens) {
            if *c == 0 {
                continue;
            }
            let c = BigRational::from_integer(BigInt::from(*c));
            for (vi, gi) in v.iter_mut().zip(g) {
                *vi += &c * gi;
            }
        }
        v
    }

    fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .zip(&self.orders)
            .map(|((x, y), d)| (x + y) % d.to_u64().expect("small discriminant group"))
            .collect()
    }

    /// All elements of the subgroup generated by `gens`.
    fn span(&self, gens: &[Vec<u64>]) -> BTreeSet<Vec<u64>> {
        let zero = vec![0u64; self.orders.len()];
        let mut seen = BTreeSet::from([zero.clone()]);
        let mut queue = VecDeque::from([zero]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = self.add(&x, g);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        for d in &self.orders {
            let d = d.to_u64().expect("small discriminant group");
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..d).map(move |c| {
                        let mut q = p.clone();
                        q.push(c);
                        q
                    })
                })
                .collect();
        }
        out
    }
}

fn is_integer(q: &BigRational) -> bool {
    q.is_integer()
}

/// All integral overlattices of `l` on which each `(root, norm)` in `keep_roots`
/// still satisfies the crystallographic condition. Includes `l` itself.
pub fn overlattices(l: &QuadLattice, keep_roots: &[(Vec<BigInt>, BigInt)]) -> Vec<Overlattice> {
    let group = DiscriminantGroup::new(l);
    let n = l.rank();
    let roots_rat: Vec<(Vec<BigRational>, BigInt)> = keep_roots
        .iter()
        .map(|(u, k)| (u.iter().map(|x| BigRational::from_integer(x.clone())).collect(), k.clone()))
        .collect();

    // An element can join a subgroup only if it is integral against itself and
    // keeps every root crystallographic.
    let admissible = |v: &[BigRational]| -> bool {
        if !is_integer(&l.inner_rat(v, v)) {
            return false;
        }
        roots_rat.iter().all(|(u, k)| {
            let t = l.inner_rat(u, v) * BigRational::from_integer(BigInt::from(2))
                / BigRational::from_integer(k.clone());
            is_integer(&t)
        })
    };
    let candidates: Vec<(Vec<u64>, Vec<BigRational>)> = group
        .elements()
        .into_iter()
        .filter(|c| c.iter().any(|&x| x != 0))
        .map(|c| {
            let v = group.vector(&c);
            (c, v)
        })
        .filter(|(_, v)| admissible(v))
        .collect();

    let zero = vec![0u64; group.orders.len()];
    let mut found: BTreeSet<BTreeSet<Vec<u64>>> = BTreeSet::new();
    let start: BTreeSet<Vec<u64>> = BTreeSet::from([zero]);
    found.insert(start.clone());
    let mut queue: VecDeque<(Vec<Vec<u64>>, BTreeSet<Vec<u64>>)> = VecDeque::from([(Vec::new(), start)]);
    while let Some((gens, elems)) = queue.pop_front() {
        let gen_vecs: Vec<Vec<BigRational>> = gens.iter().map(|g| group.vector(g)).collect();
        for (c, v) in &candidates {
            if elems.contains(c) {
                continue;
            }
            if !gen_vecs.iter().all(|w| is_integer(&l.inner_rat(v, w))) {
                continue;
            }
            let mut next_gens = gens.clone();
            next_gens.push(c.clone());
            let span = group.span(&next_gens);
            if found.insert(span.clone()) {
                queue.push_back((next_gens, span));
            }
        }
    }

    let mut out: Vec<Overlattice> = found
        .iter()
        .map(|subgroup| build_overlattice(l, &group, subgroup, n))
        .collect();
    out.sort_by(|a, b| a.index.cmp(&b.index).then_with(|| a.gram.cmp(&b.gram)));
    out
}

fn build_overlattice(
    l: &QuadLattice,
    group: &DiscriminantGroup,
    subgroup: &BTreeSet<Vec<u64>>,
    n: usize,
) -> Overlattice {
    let mut vectors: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect();
    vectors.extend(subgroup.iter().filter(|c| c.iter().any(|&x| x != 0)).map(|c| group.vector(c)));
    let basis_change = rational_span_basis(&vectors);
    let gram_rat = linalg::congruence_rat(&linalg::to_rat(l.gram().entries()), &basis_change);
    let gram = GramMatrix::new(
        gram_rat.iter().map(|row| row.iter().map(|q| q.to_integer()).collect()).collect(),
    )
    .expect("congruent form is symmetric");
    Overlattice { basis_change, index: BigInt::from(subgroup.len()), gram }
}

/// Crystallographic root test: `(e,e) = k` and `2(e,x) ∈ kℤ` for all `x ∈ L`.
pub fn is_root(l: &QuadLattice, e: &[BigInt], k: &BigInt) -> Result<bool> {
    if e.len() != l.rank() {
        return Err(Error::RankMismatch { expected: l.rank(), found: e.len() });
    }
    if !gcd_all(e.iter()).is_one() {
        return Err(Error::NotPrimitive);
    }
    if !k.is_positive() || l.norm(e) != *k {
        return Ok(false);
    }
    let two = BigInt::from(2);
    Ok(l.gram_times(e).iter().all(|c| ((&two * c) % k).is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn g6() -> QuadLattice {
        QuadLattice::from_i64(&[[2, 0, 0, -1], [0, 2, 0, -1], [0, 0, 2, -3], [-1, -1, -3, 2]]).unwrap()
    }

    #[test]
    fn invariant_factor_examples() {
        let l1 = QuadLattice::diagonal(&[-7, 1, 1, 1]).unwrap();
        assert_eq!(l1.invariant_factors(), ints(&[1, 1, 1, 7]).as_slice());
        let l3 = QuadLattice::diagonal(&[-3, 5, 1, 1]).unwrap();
        assert_eq!(l3.invariant_factors(), ints(&[1, 1, 1, 15]).as_slice());
        let l6 = g6();
        let prod = l6.invariant_factors().iter().fold(int(1), |a, b| a * b);
        assert_eq!(prod, int(28));
        assert_eq!(l6.discriminant(), &int(-28));
    }

    #[test]
    fn signature_examples() {
        assert_eq!(QuadLattice::diagonal(&[-7, 1, 1, 1]).unwrap().signature(), (3, 1));
        assert_eq!(QuadLattice::diagonal(&[2, 3]).unwrap().signature(), (2, 0));
        let g1 = QuadLattice::from_i64(&[[1, 0, 0, -1], [0, 2, 0, -1], [0, 0, 1, -2], [-1, -1, -2, 2]])
            .unwrap();
        assert_eq!(g1.signature(), (3, 1));
        assert!(g1.is_hyperbolic());
    }

    #[test]
    fn degenerate_and_asymmetric_rejected() {
        assert_eq!(QuadLattice::from_i64(&[[1, 1], [1, 1]]), Err(Error::DegenerateLattice));
        assert_eq!(GramMatrix::from_i64(&[[1, 2], [3, 1]]), Err(Error::NotSymmetric(0, 1)));
        assert_eq!(GramMatrix::from_i64(&[vec![1, 2]]), Err(Error::NotSquare));
    }

    #[test]
    fn scaling_multiplies_discriminant() {
        let l = QuadLattice::diagonal(&[1, 1]).unwrap().scaled(2).unwrap();
        assert_eq!(l.discriminant(), &int(4));
    }

    #[test]
    fn dual_examples() {
        let u = dual_lattice(&QuadLattice::diagonal(&[1, 1, 1, -1]).unwrap());
        assert_eq!(u.index, int(1));
        assert_eq!(u.basis_change, linalg::to_rat(&linalg::identity(4)));
        let d = dual_lattice(&QuadLattice::diagonal(&[-7, 1, 1, 1]).unwrap());
        assert_eq!(d.index, int(7));
        assert_eq!(d.basis_change[0][0], BigRational::new(int(1), int(7)));
        assert_eq!(d.basis_change[1][1], BigRational::one());
        let s = dual_lattice(&QuadLattice::diagonal(&[2, 2]).unwrap());
        assert_eq!(s.index, int(4));
        assert_eq!(s.basis_change[1][1], BigRational::new(int(1), int(2)));
        assert_eq!(linalg::det_rat(&s.basis_change), BigRational::new(int(1), int(4)));
    }

    #[test]
    fn even_sublattice_examples() {
        let s = even_sublattice(&QuadLattice::diagonal(&[1, 1]).unwrap());
        assert_eq!(s.index, int(2));
        assert!(s.lattice.is_even());
        assert_eq!(s.lattice.discriminant(), &int(4));

        let s = even_sublattice(&QuadLattice::diagonal(&[-7, 1, 1, 1]).unwrap());
        assert!(s.lattice.is_even());
        assert_eq!(s.lattice.discriminant(), &int(-28));

        let s = even_sublattice(&g6());
        assert_eq!(s.index, int(1));
        assert_eq!(&s.lattice, &g6());
    }

    #[test]
    fn overlattices_of_unimodular_is_trivial() {
        let l = QuadLattice::diagonal(&[-1, 1, 1, 1]).unwrap();
        let o = overlattices(&l, &[]);
        assert_eq!(o.len(), 1);
        assert_eq!(o[0].index, int(1));
    }

    #[test]
    fn overlattices_of_l6() {
        let l6 = g6();
        let roots: Vec<(Vec<BigInt>, BigInt)> = (0..4)
            .map(|i| {
                let mut e = vec![int(0); 4];
                e[i] = int(1);
                (e, int(2))
            })
            .collect();
        let o = overlattices(&l6, &roots);
        // ℤ/2 ⊕ ℤ/14 has three elements of order 2, each spanning an integral extension
        assert_eq!(o.len(), 4);
        assert_eq!(o[0].index, int(1));
        for ext in &o[1..] {
            assert_eq!(ext.index, int(2));
            let m = ext.lattice();
            assert_eq!(m.discriminant(), &int(-7));
            assert!(!m.is_even());
            assert_eq!(linalg::det_rat(&ext.basis_change).abs(), BigRational::new(int(1), int(2)));
        }
    }

    #[test]
    fn root_condition_restricts_overlattices() {
        // [9] ⊂ [1] has index 3, but 2(u, u/3) = 6 ∉ 9ℤ for the norm-9 root u.
        let l = QuadLattice::diagonal(&[9]).unwrap();
        assert_eq!(overlattices(&l, &[]).len(), 2);
        assert_eq!(overlattices(&l, &[(ints(&[1]), int(9))]).len(), 1);
    }

    #[test]
    fn root_examples() {
        let l1 = QuadLattice::diagonal(&[-7, 1, 1, 1]).unwrap();
        assert!(is_root(&l1, &ints(&[0, 1, -1, 0]), &int(2)).unwrap());
        assert!(!is_root(&l1, &ints(&[0, 1, 2, 3]), &int(14)).unwrap());
        assert_eq!(is_root(&l1, &ints(&[0, 2, 2, 0]), &int(8)), Err(Error::NotPrimitive));
        let l3 = QuadLattice::diagonal(&[-3, 5, 1, 1]).unwrap();
        assert!(is_root(&l3, &ints(&[1, 0, 3, 0]), &int(6)).unwrap());
    }
}
