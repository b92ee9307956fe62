//! Vinberg's algorithm with a restrictable set of root norms.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{divisors, gcd_i128, to_i128};
use crate::coxeter::{build_diagram_in, CoxeterDiagram, VolumeVerdict};
use crate::lattice::{is_root, QuadLattice};
use crate::linalg::{self, IntMatrix};
use crate::shell::Shell;
use crate::{Error, Result};

/// Which root norms the reflection group is generated by.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NormPolicy {
    /// Every divisor of twice the last invariant factor: all possible root norms.
    AllDivisors,
    Explicit(BTreeSet<u64>),
}

impl NormPolicy {
    pub fn one_two() -> Self {
        NormPolicy::Explicit(BTreeSet::from([1, 2]))
    }

    pub fn explicit(norms: impl IntoIterator<Item = u64>) -> Result<Self> {
        let set: BTreeSet<u64> = norms.into_iter().collect();
        if set.is_empty() || set.contains(&0) {
            return Err(Error::InvalidArgument("root norms must be positive".into()));
        }
        Ok(NormPolicy::Explicit(set))
    }

    pub fn norms(&self, l: &QuadLattice) -> Result<Vec<u64>> {
        match self {
            NormPolicy::AllDivisors => {
                let e = l.exponent().to_u64().ok_or(Error::Overflow("root norm bound"))?;
                Ok(divisors(2 * e))
            }
            NormPolicy::Explicit(s) => Ok(s.iter().copied().collect()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub max_roots: usize,
    #[serde(serialize_with = "crate::report::rat_str")]
    pub max_priority: BigRational,
}

impl Default for Budget {
    fn default() -> Self {
        Self { max_roots: 64, max_priority: BigRational::from_integer(BigInt::from(1_000_000)) }
    }
}

/// An accepted root with its position relative to the basic point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Root {
    #[serde(serialize_with = "crate::report::big_vec")]
    pub coords: Vec<BigInt>,
    #[serde(serialize_with = "crate::report::big_str")]
    pub norm: BigInt,
    /// `(a, v0)`.
    #[serde(serialize_with = "crate::report::big_str")]
    pub inner_v0: BigInt,
    /// `(a, v0)² / (a, a)`.
    #[serde(serialize_with = "crate::report::rat_str")]
    pub priority: BigRational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Compact,
    FiniteVolume,
    BudgetExhausted,
    /// Stopped early: two accepted bad roots have non-intersecting mirrors.
    BadPair,
}

#[derive(Debug, Clone, Serialize)]
pub struct VinbergReport {
    #[serde(serialize_with = "crate::report::big_vec")]
    pub v0: Vec<BigInt>,
    pub norms: Vec<u64>,
    pub roots: Vec<Root>,
    #[serde(serialize_with = "crate::report::big_mat")]
    pub gram: IntMatrix,
    pub verdict: Verdict,
    /// Whether the bad roots found so far span an elliptic subdiagram.
    pub bad_finite: bool,
    pub bad_roots: Vec<usize>,
    /// All pairs of bad roots with parallel or divergent mirrors.
    pub bad_pairs: Vec<(usize, usize)>,
    /// The most divergent of `bad_pairs`.
    pub witness: Option<(usize, usize)>,
    #[serde(skip)]
    pub diagram: CoxeterDiagram,
}

type Vec128 = Vec<i128>;

fn to_i128_mat(m: &[Vec<BigInt>], what: &'static str) -> Result<Vec<Vec<i128>>> {
    m.iter().map(|r| r.iter().map(|x| to_i128(x, what)).collect()).collect()
}

fn dot(x: &[i128], y: &[i128]) -> i128 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

fn mat_vec(a: &[Vec<i128>], x: &[i128]) -> Vec128 {
    a.iter().map(|r| dot(r, x)).collect()
}

/// Candidate roots of one norm `k`, organized by `(a, v0)`.
///
/// Roots of norm `k` lie in `M_k = {a : 2Ga ∈ kℤⁿ}`; in a basis `P` of `M_k`
/// adapted to `v0` (first coordinate `y₁ = (a,v0)/g`, the rest spanning
/// `v0^⊥`), each cell is an ellipsoid shell in the remaining coordinates.
struct NormCell {
    k: u64,
    /// Columns map cell coordinates to lattice coordinates.
    p: Vec<Vec<i128>>,
    g: i128,
    q11: i128,
    b: Vec128,
    shell: Shell,
}

impl NormCell {
    fn new(l: &QuadLattice, v0: &[BigInt], k: u64) -> Result<Self> {
        let n = l.rank();
        let kk = BigInt::from(k / k.gcd(&2));
        let s = linalg::smith(l.gram().entries());
        // M_k = V · diag(k'/gcd(k', dᵢ)) ℤⁿ
        let mut basis = s.right.clone();
        for (i, d) in s.diag.iter().enumerate() {
            let f = &kk / kk.gcd(d);
            for row in basis.iter_mut() {
                row[i] = &row[i] * &f;
            }
        }
        let gv0 = l.gram_times(v0);
        let c: Vec<BigInt> = (0..n)
            .map(|j| (0..n).fold(BigInt::zero(), |acc, i| acc + &basis[i][j] * &gv0[i]))
            .collect();
        let sc = linalg::smith(&[c.clone()]);
        let mut u = sc.right;
        let first: BigInt = (0..n).fold(BigInt::zero(), |acc, i| acc + &c[i] * &u[i][0]);
        if first.is_negative() {
            for row in u.iter_mut() {
                row[0] = -row[0].clone();
            }
        }
        let g = first.abs();
        let p_big = linalg::mul_int(&basis, &u);
        let q = linalg::congruence_int(l.gram().entries(), &p_big);
        let q = to_i128_mat(&q, "norm cell form")?;
        let p = to_i128_mat(&p_big, "norm cell basis")?;
        let q_perp: Vec<Vec<i128>> = q[1..].iter().map(|r| r[1..].to_vec()).collect();
        Ok(Self {
            k,
            p,
            g: to_i128(&g, "norm cell gcd")?,
            q11: q[0][0],
            b: q[0][1..].to_vec(),
            shell: Shell::new(q_perp),
        })
    }

    /// Primitive lattice vectors `a` with `(a,a) = k` and `(a, v0) = −j·g`.
    fn candidates(&self, j: i128) -> Vec<Vec128> {
        let y1 = -j;
        let beta: Vec128 = self.b.iter().map(|x| x * y1).collect();
        let gamma = self.q11 * y1 * y1 - self.k as i128;
        let mut out = Vec::new();
        let p = &self.p;
        self.shell.solutions(&beta, gamma, &mut |yp: &[i128]| {
            let a: Vec128 = (0..p.len())
                .map(|r| p[r][0] * y1 + (0..yp.len()).map(|c| p[r][c + 1] * yp[c]).sum::<i128>())
                .collect();
            if a.iter().fold(0, |acc, &x| gcd_i128(acc, x)) == 1 {
                out.push(a);
            }
        });
        out
    }

    fn priority(&self, j: i128) -> BigRational {
        let m = BigInt::from(j * self.g);
        BigRational::new(&m * &m, BigInt::from(self.k))
    }
}

/// Deterministic basic point: the first basis vector of negative norm, else the
/// primitive negative vector of smallest |norm| in the smallest box containing one
/// (ties broken lexicographically).
pub fn choose_basic_point(l: &QuadLattice) -> Result<Vec<BigInt>> {
    if !l.is_hyperbolic() {
        let (p, q) = l.signature();
        return Err(Error::NotHyperbolic(p, q));
    }
    let n = l.rank();
    if let Some(i) = (0..n).find(|&i| l.gram().get(i, i).is_negative()) {
        let mut v = vec![BigInt::zero(); n];
        v[i] = BigInt::one();
        return Ok(v);
    }
    let g = to_i128_mat(l.gram().entries(), "basic point search")?;
    for h in 1i128.. {
        let mut best: Option<(i128, Vec128)> = None;
        let mut x = vec![-h; n];
        'outer: loop {
            if x.iter().any(|c| c.abs() == h) && x.iter().fold(0, |a, &c| gcd_i128(a, c)) == 1 {
                let nv = dot(&x, &mat_vec(&g, &x));
                if nv < 0 {
                    let better = match &best {
                        None => true,
                        Some((bn, bx)) => -nv < -bn || (nv == *bn && x < *bx),
                    };
                    if better {
                        best = Some((nv, x.clone()));
                    }
                }
            }
            let mut k = 0;
            loop {
                if k == n {
                    break 'outer;
                }
                x[k] += 1;
                if x[k] <= h {
                    break;
                }
                x[k] = -h;
                k += 1;
            }
        }
        if let Some((_, v)) = best {
            return Ok(v.into_iter().map(BigInt::from).collect());
        }
    }
    unreachable!("a hyperbolic lattice has negative vectors")
}

fn make_root(l: &QuadLattice, v0: &[BigInt], a: &[i128]) -> Root {
    let coords: Vec<BigInt> = a.iter().map(|&x| BigInt::from(x)).collect();
    let norm = l.norm(&coords);
    let inner_v0 = l.inner(&coords, v0);
    let priority = BigRational::new(&inner_v0 * &inner_v0, norm.clone());
    Root { coords, norm, inner_v0, priority }
}

fn lex_negative(a: &[i128]) -> bool {
    a.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0)
}

/// Simple roots of the finite root system in `v0^⊥` (roots with norms in the
/// policy), for the chamber on the lexicographically negative side.
pub fn stabilizer_chamber(l: &QuadLattice, v0: &[BigInt], policy: &NormPolicy) -> Result<Vec<Root>> {
    let g = to_i128_mat(l.gram().entries(), "lattice")?;
    let mut phi: Vec<(Vec128, i128)> = Vec::new();
    for k in policy.norms(l)? {
        let cell = NormCell::new(l, v0, k)?;
        for a in cell.candidates(0) {
            phi.push((a, k as i128));
        }
    }
    let negative: Vec<&(Vec128, i128)> = phi.iter().filter(|(a, _)| lex_negative(a)).collect();
    let mut simple: Vec<Vec128> = Vec::new();
    for (a, k) in &negative {
        let ga = mat_vec(&g, a);
        // s_a permutes the other negative roots iff a is simple
        let is_simple = negative.iter().all(|(b, _)| {
            if b == a {
                return true;
            }
            let t = 2 * dot(&ga, b);
            if t % k != 0 {
                return false;
            }
            let c = t / k;
            let image: Vec128 = b.iter().zip(a.iter()).map(|(x, y)| x - c * y).collect();
            lex_negative(&image)
        });
        if is_simple {
            simple.push(a.clone());
        }
    }
    simple.sort();
    Ok(simple.iter().map(|a| make_root(l, v0, a)).collect())
}

/// The root-by-root state machine.
pub struct VinbergEngine {
    lattice: QuadLattice,
    v0: Vec<BigInt>,
    norms: Vec<u64>,
    gram: Vec<Vec<i128>>,
    cells: Vec<NormCell>,
    heap: BinaryHeap<Reverse<(BigRational, usize, i128)>>,
    pending: VecDeque<Vec128>,
    accepted: Vec<Root>,
    accepted_cov: Vec<Vec128>,
    max_priority: BigRational,
}

impl VinbergEngine {
    pub fn new(l: &QuadLattice, policy: &NormPolicy, budget: &Budget) -> Result<Self> {
        let v0 = choose_basic_point(l)?;
        Self::with_basic_point(l, &v0, policy, budget)
    }

    pub fn with_basic_point(l: &QuadLattice, v0: &[BigInt], policy: &NormPolicy, budget: &Budget) -> Result<Self> {
        if !l.norm(v0).is_negative() {
            return Err(Error::InvalidArgument("basic point must have negative norm".into()));
        }
        let norms = policy.norms(l)?;
        let gram = to_i128_mat(l.gram().entries(), "lattice")?;
        let cells = norms.iter().map(|&k| NormCell::new(l, v0, k)).collect::<Result<Vec<_>>>()?;
        let heap = cells.iter().enumerate().map(|(i, c)| Reverse((c.priority(1), i, 1))).collect();
        let mut engine = Self {
            lattice: l.clone(),
            v0: v0.to_vec(),
            norms,
            gram,
            cells,
            heap,
            pending: VecDeque::new(),
            accepted: Vec::new(),
            accepted_cov: Vec::new(),
            max_priority: budget.max_priority.clone(),
        };
        for r in stabilizer_chamber(l, v0, policy)? {
            engine.push_accepted(r);
        }
        Ok(engine)
    }

    pub fn roots(&self) -> &[Root] {
        &self.accepted
    }

    pub fn v0(&self) -> &[BigInt] {
        &self.v0
    }

    pub fn norms(&self) -> &[u64] {
        &self.norms
    }

    fn push_accepted(&mut self, r: Root) {
        let a: Vec128 = r.coords.iter().map(|x| x.to_i128().expect("root fits")).collect();
        self.accepted_cov.push(mat_vec(&self.gram, &a));
        self.accepted.push(r);
    }

    /// Next root of the polyhedron, or `None` once the priority budget is spent.
    pub fn next_root(&mut self) -> Result<Option<Root>> {
        loop {
            while let Some(a) = self.pending.pop_front() {
                if self.accepted_cov.iter().all(|c| dot(c, &a) <= 0) {
                    let r = make_root(&self.lattice, &self.v0, &a);
                    debug_assert!(is_root(&self.lattice, &r.coords, &r.norm).unwrap_or(false));
                    if !is_root(&self.lattice, &r.coords, &r.norm)? {
                        return Err(Error::InvalidArgument("enumerated vector is not a root".into()));
                    }
                    self.push_accepted(r.clone());
                    return Ok(Some(r));
                }
            }
            let Some(Reverse((p, _, _))) = self.heap.peek().cloned() else {
                return Ok(None);
            };
            if p > self.max_priority {
                return Ok(None);
            }
            let mut batch: Vec<Vec128> = Vec::new();
            while let Some(Reverse((q, ci, j))) = self.heap.peek().cloned() {
                if q != p {
                    break;
                }
                self.heap.pop();
                batch.extend(self.cells[ci].candidates(j));
                let next = j + 1;
                self.heap.push(Reverse((self.cells[ci].priority(next), ci, next)));
            }
            batch.sort();
            batch.dedup();
            self.pending = batch.into();
        }
    }

    fn diagram(&self) -> Result<CoxeterDiagram> {
        let coords: Vec<Vec<BigInt>> = self.accepted.iter().map(|r| r.coords.clone()).collect();
        build_diagram_in(&self.lattice, &coords, &self.v0)
    }

    fn report(&self, verdict: Verdict, diagram: CoxeterDiagram) -> VinbergReport {
        let bad_pairs = diagram.bad_pairs();
        let witness = bad_pairs
            .iter()
            .copied()
            .max_by(|&(a, b), &(c, d)| {
                diagram.relation(a, b).cos_sq.cmp(&diagram.relation(c, d).cos_sq).then((c, d).cmp(&(a, b)))
            });
        VinbergReport {
            v0: self.v0.clone(),
            norms: self.norms.clone(),
            roots: self.accepted.clone(),
            gram: diagram.gram().clone(),
            verdict,
            bad_finite: diagram.bad_group_finite(),
            bad_roots: diagram.bad_vertices(),
            bad_pairs,
            witness,
            diagram,
        }
    }
}

/// Runs the algorithm until the polyhedron has finite volume, a pair of bad
/// mirrors fails to intersect, or the budget is spent.
pub fn run(l: &QuadLattice, policy: &NormPolicy, budget: &Budget) -> Result<VinbergReport> {
    let mut engine = VinbergEngine::new(l, policy, budget)?;
    run_engine(&mut engine, budget)
}

pub fn run_engine(engine: &mut VinbergEngine, budget: &Budget) -> Result<VinbergReport> {
    loop {
        let diagram = engine.diagram()?;
        match diagram.volume_verdict()? {
            VolumeVerdict::Compact => return Ok(engine.report(Verdict::Compact, diagram)),
            VolumeVerdict::FiniteVolumeNonCompact => return Ok(engine.report(Verdict::FiniteVolume, diagram)),
            VolumeVerdict::NotFiniteVolume => {}
        }
        if !diagram.bad_pairs().is_empty() {
            return Ok(engine.report(Verdict::BadPair, diagram));
        }
        if engine.roots().len() >= budget.max_roots {
            return Ok(engine.report(Verdict::BudgetExhausted, diagram));
        }
        if engine.next_root()?.is_none() {
            return Ok(engine.report(Verdict::BudgetExhausted, diagram));
        }
    }
}

/// Outcome of the (1,2)-reflectivity test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum OneTwoVerdict {
    Reflective12,
    NotReflective12 {
        /// Bad roots generating an infinite group.
        witness: Vec<Root>,
        reason: String,
    },
    Undecided,
}

#[derive(Debug, Clone, Serialize)]
pub struct OneTwoOutcome {
    pub verdict: OneTwoVerdict,
    pub restricted: VinbergReport,
    pub full: Option<VinbergReport>,
}

/// Decides (1,2)-reflectivity: first the algorithm restricted to norms {1,2};
/// failing that, the full algorithm and the finiteness of the group generated
/// by the bad reflections.
pub fn one_two_reflectivity(l: &QuadLattice, budget: &Budget) -> Result<OneTwoOutcome> {
    let restricted = run(l, &NormPolicy::one_two(), budget)?;
    if matches!(restricted.verdict, Verdict::Compact | Verdict::FiniteVolume) {
        return Ok(OneTwoOutcome { verdict: OneTwoVerdict::Reflective12, restricted, full: None });
    }
    let full = run(l, &NormPolicy::AllDivisors, budget)?;
    let verdict = match full.verdict {
        Verdict::BadPair => {
            let (a, b) = full.witness.expect("bad pair exit has a witness");
            OneTwoVerdict::NotReflective12 {
                witness: vec![full.roots[a].clone(), full.roots[b].clone()],
                reason: format!("bad roots {} and {} have non-intersecting mirrors", a + 1, b + 1),
            }
        }
        Verdict::Compact | Verdict::FiniteVolume if !full.bad_finite => {
            let witness = match full.witness {
                Some((a, b)) => vec![full.roots[a].clone(), full.roots[b].clone()],
                None => full.bad_roots.iter().map(|&i| full.roots[i].clone()).collect(),
            };
            OneTwoVerdict::NotReflective12 {
                witness,
                reason: "reflective, but the bad reflections generate an infinite group".into(),
            }
        }
        Verdict::Compact | Verdict::FiniteVolume => OneTwoVerdict::Reflective12,
        Verdict::BudgetExhausted => OneTwoVerdict::Undecided,
    };
    Ok(OneTwoOutcome { verdict, restricted, full: Some(full) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn basic_points() {
        let l1 = QuadLattice::diagonal(&[-7, 1, 1, 1]).unwrap();
        assert_eq!(choose_basic_point(&l1).unwrap(), ints(&[1, 0, 0, 0]));
        let l6 = QuadLattice::from_i64(&[[2, 0, 0, -1], [0, 2, 0, -1], [0, 0, 2, -3], [-1, -1, -3, 2]]).unwrap();
        let v0 = choose_basic_point(&l6).unwrap();
        assert!(l6.norm(&v0).is_negative());
        assert!(crate::arith::gcd_all(v0.iter()).is_one());
    }

    #[test]
    fn chamber_of_diagonal_lattice() {
        let l1 = QuadLattice::diagonal(&[-7, 1, 1, 1]).unwrap();
        let v0 = ints(&[1, 0, 0, 0]);
        let ch = stabilizer_chamber(&l1, &v0, &NormPolicy::one_two()).unwrap();
        assert_eq!(ch.len(), 3);
        let l3 = QuadLattice::diagonal(&[-3, 5, 1, 1]).unwrap();
        let ch = stabilizer_chamber(&l3, &v0, &NormPolicy::AllDivisors).unwrap();
        let coords: Vec<Vec<BigInt>> = ch.iter().map(|r| r.coords.clone()).collect();
        assert_eq!(coords, vec![ints(&[0, -1, 0, 0]), ints(&[0, 0, -1, 1]), ints(&[0, 0, 0, -1])]);
    }

    #[test]
    fn even_lattice_has_only_norm_two_chamber_roots() {
        let l6 = QuadLattice::from_i64(&[[2, 0, 0, -1], [0, 2, 0, -1], [0, 0, 2, -3], [-1, -1, -3, 2]]).unwrap();
        let v0 = choose_basic_point(&l6).unwrap();
        let ch = stabilizer_chamber(&l6, &v0, &NormPolicy::one_two()).unwrap();
        assert!(ch.iter().all(|r| r.norm == int(2)));
        let r = run(&l6, &NormPolicy::one_two(), &Budget::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Compact);
        assert!(r.roots.iter().all(|r| r.norm == int(2)));
        println!("v0 = {:?}, chamber = {}, roots = {}", v0, ch.len(), r.roots.len());
    }

    #[test]
    fn l3_full_run() {
        let l3 = QuadLattice::diagonal(&[-3, 5, 1, 1]).unwrap();
        let r = run(&l3, &NormPolicy::AllDivisors, &Budget::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Compact);
        assert_eq!(r.roots.len(), 7);
        assert_eq!(r.roots[3].coords, ints(&[1, 0, 3, 0]));
        assert!(!r.bad_finite);
    }

    #[test]
    fn l1_restricted_run() {
        let l1 = QuadLattice::diagonal(&[-7, 1, 1, 1]).unwrap();
        let r = run(&l1, &NormPolicy::one_two(), &Budget::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Compact);
        assert!(r.bad_finite);
    }
}
