//! Local invariants of rational quadratic forms: Hilbert symbols, Hasse
//! invariants, anisotropy over ℚ_p and ℚ, rational equivalence, and an
//! explicit ℤ-isometry search.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{prime_divisors, split_valuation, squarefree_class};
use crate::lattice::{GramMatrix, QuadLattice};
use crate::linalg;
use crate::{Error, Result};

/// A place of ℚ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Finite(u64),
    Infinite,
}

impl Place {
    /// JSON encoding: the prime itself, or 0 for the real place.
    pub fn code(self) -> u64 {
        match self {
            Place::Finite(p) => p,
            Place::Infinite => 0,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinite => write!(f, "inf"),
        }
    }
}

/// Diagonal rational quadratic form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalForm {
    entries: Vec<BigRational>,
}

impl DiagonalForm {
    pub fn new(entries: Vec<BigRational>) -> Result<Self> {
        if entries.iter().any(|e| e.is_zero()) {
            return Err(Error::InvalidArgument("diagonal form has a zero entry".into()));
        }
        Ok(Self { entries })
    }

    pub fn from_i64(entries: &[i64]) -> Result<Self> {
        Self::new(entries.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn discriminant(&self) -> BigRational {
        self.entries.iter().fold(BigRational::one(), |acc, x| acc * x)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalInvariants {
    pub place: Place,
    pub hasse: i8,
    pub disc_square_class: BigInt,
    pub rank: usize,
}

fn legendre(a: &BigInt, p: u64) -> i8 {
    let pb = BigInt::from(p);
    let r = a.mod_floor(&pb);
    if r.is_zero() {
        return 0;
    }
    let e = BigInt::from((p - 1) / 2);
    if r.modpow(&e, &pb).is_one() {
        1
    } else {
        -1
    }
}

fn mod8(u: &BigInt) -> u64 {
    u.mod_floor(&BigInt::from(8)).to_u64().expect("residue mod 8")
}

/// Hilbert symbol `(a, b)_v`.
pub fn hilbert_symbol(a: &BigRational, b: &BigRational, v: Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::InvalidArgument("Hilbert symbol of zero".into()));
    }
    let (a, b) = (squarefree_class(a), squarefree_class(b));
    Ok(match v {
        Place::Infinite => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Finite(2) => {
            let (alpha, u) = split_valuation(&a, 2);
            let (beta, w) = split_valuation(&b, 2);
            let (u8_, w8) = (mod8(&u), mod8(&w));
            let eps = |x: u64| ((x - 1) / 2) % 2;
            let omega = |x: u64| ((x * x - 1) / 8) % 2;
            let e = eps(u8_) * eps(w8) + alpha as u64 * omega(w8) + beta as u64 * omega(u8_);
            if e % 2 == 0 {
                1
            } else {
                -1
            }
        }
        Place::Finite(p) => {
            let (alpha, u) = split_valuation(&a, p);
            let (beta, w) = split_valuation(&b, p);
            let mut s: i8 = 1;
            if (alpha as u64 * beta as u64 * ((p - 1) / 2)) % 2 == 1 {
                s = -s;
            }
            if beta % 2 == 1 {
                s *= legendre(&u, p);
            }
            if alpha % 2 == 1 {
                s *= legendre(&w, p);
            }
            s
        }
    })
}

/// `∏_{i<j} (a_i, a_j)_v`.
pub fn hasse_invariant(f: &DiagonalForm, v: Place) -> i8 {
    let e = f.entries();
    let mut h = 1;
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            h *= hilbert_symbol(&e[i], &e[j], v).expect("entries are nonzero");
        }
    }
    h
}

/// Rational congruence diagonalization of a non-degenerate Gram matrix.
pub fn diagonalize_over_q(g: &GramMatrix) -> Result<DiagonalForm> {
    let d = linalg::diagonalize_symmetric(&linalg::to_rat(g.entries())).ok_or(Error::DegenerateLattice)?;
    DiagonalForm::new(d)
}

/// Canonical representative of `q` modulo `(ℚ_v*)²`.
pub fn local_square_class(q: &BigRational, v: Place) -> BigInt {
    let s = squarefree_class(q);
    match v {
        Place::Infinite => {
            if s.is_negative() {
                -BigInt::one()
            } else {
                BigInt::one()
            }
        }
        Place::Finite(2) => {
            let (val, u) = split_valuation(&s, 2);
            BigInt::from(mod8(&u)) * BigInt::from(if val % 2 == 1 { 2 } else { 1 })
        }
        Place::Finite(p) => {
            let (val, u) = split_valuation(&s, p);
            let unit = if legendre(&u, p) == 1 {
                1
            } else {
                (2..p).find(|&c| legendre(&BigInt::from(c), p) == -1).expect("nonresidue exists")
            };
            BigInt::from(unit) * BigInt::from(if val % 2 == 1 { p } else { 1 })
        }
    }
}

pub fn is_local_square(q: &BigRational, v: Place) -> bool {
    local_square_class(q, v).is_one()
}

pub fn local_invariants(f: &DiagonalForm, v: Place) -> LocalInvariants {
    LocalInvariants {
        place: v,
        hasse: hasse_invariant(f, v),
        disc_square_class: local_square_class(&f.discriminant(), v),
        rank: f.rank(),
    }
}

/// Anisotropy of a rank-4 form over ℚ_p: `d` is a square and `ε_p = −(−1,−1)_p`.
pub fn is_anisotropic_local_rank4(f: &DiagonalForm, v: Place) -> Result<bool> {
    if f.rank() != 4 {
        return Err(Error::RankMismatch { expected: 4, found: f.rank() });
    }
    if v == Place::Infinite {
        let pos = f.entries().iter().filter(|x| x.is_positive()).count();
        return Ok(pos == 0 || pos == 4);
    }
    let m1 = BigRational::from_integer(-BigInt::one());
    let h = hilbert_symbol(&m1, &m1, v)?;
    Ok(is_local_square(&f.discriminant(), v) && hasse_invariant(f, v) == -h)
}

/// Places `2·d` plus the real place.
fn screening_places(d: &BigInt) -> Vec<Place> {
    let mut primes: BTreeSet<u64> = prime_divisors(d).into_iter().collect();
    primes.insert(2);
    let mut out: Vec<Place> = primes.into_iter().map(Place::Finite).collect();
    out.push(Place::Infinite);
    out
}

/// Places at which a rank-4 lattice is anisotropic; empty iff isotropic over ℚ.
pub fn anisotropic_places(l: &QuadLattice) -> Result<Vec<Place>> {
    if l.rank() != 4 {
        return Err(Error::RankMismatch { expected: 4, found: l.rank() });
    }
    let f = diagonalize_over_q(l.gram())?;
    let mut out = Vec::new();
    for v in screening_places(l.discriminant()) {
        if is_anisotropic_local_rank4(&f, v)? {
            out.push(v);
        }
    }
    Ok(out)
}

pub fn is_anisotropic_over_q(l: &QuadLattice) -> Result<bool> {
    Ok(!anisotropic_places(l)?.is_empty())
}

fn hasse_places(a: &QuadLattice, b: &QuadLattice) -> Vec<Place> {
    let prod = a.discriminant() * b.discriminant();
    screening_places(&prod).into_iter().filter(|v| *v != Place::Infinite).collect()
}

/// First local obstruction to rational equivalence, if any.
fn rational_obstruction(a: &QuadLattice, b: &QuadLattice) -> Result<Option<NoWitness>> {
    if a.rank() != b.rank() {
        return Err(Error::RankMismatch { expected: a.rank(), found: b.rank() });
    }
    if a.signature() != b.signature() {
        return Ok(Some(NoWitness::Signature));
    }
    let da = BigRational::from_integer(a.discriminant().clone());
    let db = BigRational::from_integer(b.discriminant().clone());
    if squarefree_class(&(&da * &db)) != BigInt::one() {
        return Ok(Some(NoWitness::DiscriminantSquareClass));
    }
    let (fa, fb) = (diagonalize_over_q(a.gram())?, diagonalize_over_q(b.gram())?);
    for v in hasse_places(a, b) {
        if hasse_invariant(&fa, v) != hasse_invariant(&fb, v) {
            return Ok(Some(NoWitness::Hasse(v)));
        }
    }
    Ok(None)
}

/// Equivalence over ℚ: signature, discriminant square class and Hasse invariants agree.
pub fn rationally_equivalent(a: &QuadLattice, b: &QuadLattice) -> Result<bool> {
    Ok(rational_obstruction(a, b)?.is_none())
}

/// The invariant distinguishing two non-isomorphic lattices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NoWitness {
    Rank,
    Signature,
    Discriminant,
    InvariantFactors,
    Parity,
    DiscriminantSquareClass,
    Hasse(#[serde(serialize_with = "place_code")] Place),
}

fn place_code<S: serde::Serializer>(p: &Place, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u64(p.code())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsomVerdict {
    /// `Uᵀ A U = B` with `U` unimodular.
    Yes(Vec<Vec<BigInt>>),
    No(NoWitness),
    Unknown,
}

impl IsomVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, IsomVerdict::Yes(_))
    }
}

/// Invariant-based rejection followed by an explicit isometry search with
/// coordinates bounded by `height_budget`.
pub fn z_isomorphic(a: &QuadLattice, b: &QuadLattice, height_budget: u32) -> IsomVerdict {
    if a.rank() != b.rank() {
        return IsomVerdict::No(NoWitness::Rank);
    }
    if a.signature() != b.signature() {
        return IsomVerdict::No(NoWitness::Signature);
    }
    if a.discriminant() != b.discriminant() {
        return IsomVerdict::No(NoWitness::Discriminant);
    }
    if a.invariant_factors() != b.invariant_factors() {
        return IsomVerdict::No(NoWitness::InvariantFactors);
    }
    if a.is_even() != b.is_even() {
        return IsomVerdict::No(NoWitness::Parity);
    }
    match rational_obstruction(a, b) {
        Ok(Some(w)) => return IsomVerdict::No(w),
        Ok(None) => {}
        Err(_) => return IsomVerdict::Unknown,
    }
    if a.gram() == b.gram() {
        return IsomVerdict::Yes(linalg::identity(a.rank()));
    }
    let (Some(ga), Some(gb)) = (to_i128(a.gram()), to_i128(b.gram())) else {
        return IsomVerdict::Unknown;
    };
    let mut h = 1u32.min(height_budget.max(1));
    loop {
        if let Some(u) = isometry_search(&ga, &gb, h as i128) {
            return IsomVerdict::Yes(to_big(&u));
        }
        if let Some(w) = isometry_search(&gb, &ga, h as i128) {
            if let Some(u) = unimodular_inverse(&w) {
                return IsomVerdict::Yes(to_big(&u));
            }
        }
        if h >= height_budget {
            return IsomVerdict::Unknown;
        }
        h = (h * 2).min(height_budget);
    }
}

type Mat = Vec<Vec<i128>>;

fn to_i128(g: &GramMatrix) -> Option<Mat> {
    g.entries().iter().map(|r| r.iter().map(|x| x.to_i128()).collect()).collect()
}

fn to_big(m: &Mat) -> Vec<Vec<BigInt>> {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn unimodular_inverse(w: &Mat) -> Option<Mat> {
    let big = to_big(w);
    let inv = linalg::inverse(&linalg::to_rat(&big))?;
    inv.iter()
        .map(|r| r.iter().map(|q| if q.is_integer() { q.to_integer().to_i128() } else { None }).collect())
        .collect()
}

const NODE_BUDGET: usize = 400_000;

/// Vectors `x` with `xᵀ A x = target`, first `n−1` coordinates in `[−h, h]`,
/// last coordinate solved exactly.
fn vectors_of_norm(a: &Mat, target: i128, h: i128) -> Vec<Vec<i128>> {
    let n = a.len();
    let last = n - 1;
    let mut out = Vec::new();
    let mut head = vec![-h; last];
    loop {
        // (head, x) has norm a_ll x² + 2 b x + c
        let b: i128 = (0..last).map(|i| a[i][last] * head[i]).sum();
        let c: i128 = (0..last)
            .map(|i| head[i] * (0..last).map(|j| a[i][j] * head[j]).sum::<i128>())
            .sum();
        let all = a[last][last];
        let mut push = |x: i128| {
            let mut v = head.clone();
            v.push(x);
            if v.iter().any(|&t| t != 0) {
                out.push(v);
            }
        };
        if all == 0 {
            if b != 0 && (target - c) % (2 * b) == 0 {
                push((target - c) / (2 * b));
            } else if b == 0 && c == target && n == 1 {
                push(0);
            }
        } else {
            // all x² + 2bx + (c − target) = 0  ⇒  x = (−b ± √(b² − all(c − target)))/all
            let disc = b * b - all * (c - target);
            if disc >= 0 {
                let s = crate::arith::isqrt_i128(disc);
                if s * s == disc {
                    for num in [-b - s, -b + s] {
                        if num % all == 0 {
                            push(num / all);
                        }
                    }
                    if s == 0 {
                        out.dedup();
                    }
                }
            }
        }
        let mut k = 0;
        loop {
            if k == last {
                return out;
            }
            head[k] += 1;
            if head[k] <= h {
                break;
            }
            head[k] = -h;
            k += 1;
        }
    }
}

fn dot(x: &[i128], y: &[i128]) -> i128 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

fn mat_vec(a: &Mat, x: &[i128]) -> Vec<i128> {
    a.iter().map(|r| dot(r, x)).collect()
}

fn det_i128(m: &Mat) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a = m.clone();
    let mut sign = 1;
    let mut prev = 1;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// gcd of the maximal minors of the matrix whose columns are `cols`:
/// 1 iff the columns extend to a basis of ℤⁿ.
fn primitive_system(cols: &[&Vec<i128>], n: usize) -> bool {
    let k = cols.len();
    let mut g = 0i128;
    let mut rows: Vec<usize> = (0..k).collect();
    loop {
        let sub: Mat = rows.iter().map(|&r| cols.iter().map(|c| c[r]).collect()).collect();
        g = crate::arith::gcd_i128(g, det_i128(&sub));
        if g == 1 {
            return true;
        }
        // next k-combination of 0..n
        let mut i = k;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if rows[i] < n - k + i {
                rows[i] += 1;
                for j in i + 1..k {
                    rows[j] = rows[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Backtracking search for `U` with `Uᵀ A U = B`.
fn isometry_search(a: &Mat, b: &Mat, h: i128) -> Option<Mat> {
    let n = a.len();
    let mut lists: Vec<Vec<(Vec<i128>, Vec<i128>)>> = Vec::with_capacity(n);
    for j in 0..n {
        let vs = vectors_of_norm(a, b[j][j], h);
        lists.push(vs.into_iter().map(|v| {
            let av = mat_vec(a, &v);
            (v, av)
        }).collect());
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&j| lists[j].len());
    if lists.iter().any(|l| l.is_empty()) {
        return None;
    }
    let mut chosen: Vec<Option<usize>> = vec![None; n];
    let mut nodes = 0usize;
    if backtrack(&lists, b, &order, 0, &mut chosen, &mut nodes) {
        let cols: Vec<&Vec<i128>> = (0..n).map(|j| &lists[j][chosen[j].unwrap()].0).collect();
        let u: Mat = (0..n).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
        return Some(u);
    }
    None
}

fn backtrack(
    lists: &[Vec<(Vec<i128>, Vec<i128>)>],
    b: &Mat,
    order: &[usize],
    depth: usize,
    chosen: &mut Vec<Option<usize>>,
    nodes: &mut usize,
) -> bool {
    let n = order.len();
    if depth == n {
        let cols: Vec<&Vec<i128>> = (0..n).map(|j| &lists[j][chosen[j].unwrap()].0).collect();
        let u: Mat = (0..n).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
        return det_i128(&u).abs() == 1;
    }
    let j = order[depth];
    for (idx, (v, _)) in lists[j].iter().enumerate() {
        *nodes += 1;
        if *nodes > NODE_BUDGET {
            return false;
        }
        let ok = order[..depth].iter().all(|&i| {
            let (_, aw) = &lists[i][chosen[i].unwrap()];
            dot(aw, v) == b[i][j]
        });
        if !ok {
            continue;
        }
        let mut cols: Vec<&Vec<i128>> = order[..depth].iter().map(|&i| &lists[i][chosen[i].unwrap()].0).collect();
        cols.push(v);
        if !primitive_system(&cols, n) {
            continue;
        }
        chosen[j] = Some(idx);
        if backtrack(lists, b, order, depth + 1, chosen, nodes) {
            return true;
        }
        chosen[j] = None;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn q(n: i64) -> BigRational {
        rat(n, 1)
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(hilbert_symbol(&q(3), &q(-3), Place::Finite(7)), Ok(1));
        assert_eq!(hilbert_symbol(&q(-1), &q(-1), Place::Infinite), Ok(-1));
        assert_eq!(hilbert_symbol(&q(2), &q(5), Place::Finite(5)), Ok(-1));
        assert_eq!(hilbert_symbol(&q(-1), &q(-1), Place::Finite(2)), Ok(-1));
        assert!(hilbert_symbol(&q(0), &q(1), Place::Finite(3)).is_err());
    }

    #[test]
    fn hasse_examples() {
        let f = DiagonalForm::from_i64(&[1, 1, 1, 1]).unwrap();
        for v in [Place::Finite(2), Place::Finite(3), Place::Infinite] {
            assert_eq!(hasse_invariant(&f, v), 1);
        }
        let f = DiagonalForm::from_i64(&[-7, 1, 1, 1]).unwrap();
        assert_eq!(hasse_invariant(&f, Place::Finite(2)), 1);
        let f = DiagonalForm::from_i64(&[-3, 5, 1, 1]).unwrap();
        assert_eq!(hasse_invariant(&f, Place::Finite(3)), -1);
    }

    #[test]
    fn diagonalization_examples() {
        let d = diagonalize_over_q(&GramMatrix::from_i64(&[[2, -1], [-1, 2]]).unwrap()).unwrap();
        assert_eq!(d.entries(), &[q(2), rat(3, 2)]);
        let g1 = GramMatrix::from_i64(&[[1, 0, 0, -1], [0, 2, 0, -1], [0, 0, 1, -2], [-1, -1, -2, 2]]).unwrap();
        let d = diagonalize_over_q(&g1).unwrap();
        assert_eq!(squarefree_class(&d.discriminant()), BigInt::from(-7));
        assert_eq!(d.entries().iter().filter(|x| x.is_negative()).count(), 1);
    }

    #[test]
    fn local_anisotropy_examples() {
        let f = DiagonalForm::from_i64(&[-7, 1, 1, 1]).unwrap();
        assert!(is_anisotropic_local_rank4(&f, Place::Finite(2)).unwrap());
        assert!(!is_anisotropic_local_rank4(&f, Place::Finite(3)).unwrap());
        let h = DiagonalForm::from_i64(&[-1, 1, 1, 1]).unwrap();
        for p in [2, 3, 5, 7] {
            assert!(!is_anisotropic_local_rank4(&h, Place::Finite(p)).unwrap());
        }
        let short = DiagonalForm::from_i64(&[1, 1, 1]).unwrap();
        assert_eq!(
            is_anisotropic_local_rank4(&short, Place::Finite(2)),
            Err(Error::RankMismatch { expected: 4, found: 3 })
        );
    }

    #[test]
    fn global_anisotropy_examples() {
        assert!(!is_anisotropic_over_q(&QuadLattice::diagonal(&[-1, 1, 1, 1]).unwrap()).unwrap());
        assert!(is_anisotropic_over_q(&QuadLattice::diagonal(&[-7, 1, 1, 1]).unwrap()).unwrap());
        assert!(is_anisotropic_over_q(&QuadLattice::diagonal(&[-3, 5, 1, 1]).unwrap()).unwrap());
        assert_eq!(
            anisotropic_places(&QuadLattice::diagonal(&[-7, 1, 1, 1]).unwrap()).unwrap(),
            vec![Place::Finite(2)]
        );
    }

    #[test]
    fn rational_equivalence_examples() {
        let l2 = QuadLattice::diagonal(&[-15, 1, 1, 1]).unwrap();
        let l3 = QuadLattice::diagonal(&[-3, 5, 1, 1]).unwrap();
        assert!(rationally_equivalent(&l2, &l2).unwrap());
        assert!(!rationally_equivalent(&l2, &l3).unwrap());
        let g1 = QuadLattice::from_i64(&[[1, 0, 0, -1], [0, 2, 0, -1], [0, 0, 1, -2], [-1, -1, -2, 2]]).unwrap();
        let l1 = QuadLattice::diagonal(&[-7, 1, 1, 1]).unwrap();
        assert!(rationally_equivalent(&g1, &l1).unwrap());
    }

    #[test]
    fn isomorphism_examples() {
        let g1 = QuadLattice::from_i64(&[[1, 0, 0, -1], [0, 2, 0, -1], [0, 0, 1, -2], [-1, -1, -2, 2]]).unwrap();
        let l1 = QuadLattice::diagonal(&[-7, 1, 1, 1]).unwrap();
        match z_isomorphic(&g1, &l1, 16) {
            IsomVerdict::Yes(u) => {
                assert_eq!(linalg::congruence_int(g1.gram().entries(), &u), *l1.gram().entries());
                assert!(linalg::det(&u).abs().is_one());
            }
            other => panic!("expected an isometry, got {other:?}"),
        }
        let l2 = QuadLattice::diagonal(&[-15, 1, 1, 1]).unwrap();
        assert_eq!(z_isomorphic(&l1, &l2, 8), IsomVerdict::No(NoWitness::Discriminant));
        let l3 = QuadLattice::diagonal(&[-3, 5, 1, 1]).unwrap();
        assert_eq!(z_isomorphic(&l2, &l3, 8), IsomVerdict::No(NoWitness::Hasse(Place::Finite(3))));
    }

    #[test]
    fn square_classes() {
        assert!(is_local_square(&q(-7), Place::Finite(2)));
        assert!(!is_local_square(&q(-7), Place::Finite(3)));
        assert_eq!(local_square_class(&rat(3, 4), Place::Finite(2)), BigInt::from(3));
        assert_eq!(local_square_class(&q(-5), Place::Infinite), BigInt::from(-1));
    }
}
