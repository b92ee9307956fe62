//! Classification of (1,2)-reflective anisotropic hyperbolic lattices of rank 4:
//! outermost-edge enumeration, anisotropy filtering, isomorphism classes,
//! overlattice saturation and the reflectivity verdicts.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use crate::edge_bounds::{valid_angle_sets, width_bound, Angle, AngleSet};
use crate::lattice::{even_sublattice, overlattices, GramMatrix, QuadLattice};
use crate::linalg;
use crate::local::{is_anisotropic_over_q, z_isomorphic, IsomVerdict};
use crate::vinberg::{one_two_reflectivity, Budget, OneTwoOutcome, OneTwoVerdict};
use crate::Result;

/// Version of the report layout.
pub const REPORT_VERSION: u32 = 1;

/// Coordinate bound for explicit isometry searches.
pub const ISOM_HEIGHT: u32 = 16;

/// Gram matrix of four roots around an outermost edge.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdgeConfiguration {
    pub gram: GramMatrix,
    pub angle_set: AngleSet,
    /// Bound applied to `|g₃₄| / √(g₃₃g₄₄)`.
    pub t_used: f64,
}

/// The seven lattices the classification produces, by name.
pub fn reference_lattices() -> Vec<QuadLattice> {
    let d = |name: &str, v: &[i64]| QuadLattice::diagonal(v).expect("non-degenerate").with_name(name);
    vec![
        d("L(1)", &[-7, 1, 1, 1]),
        d("L(2)", &[-15, 1, 1, 1]),
        d("L(3)", &[-3, 5, 1, 1]),
        d("L(4)", &[-23, 1, 1, 1]),
        d("L(5)", &[-55, 1, 1, 1]),
        QuadLattice::from_i64(&[[2, 0, 0, -1], [0, 2, 0, -1], [0, 0, 2, -3], [-1, -1, -3, 2]])
            .expect("non-degenerate")
            .with_name("L(6)"),
        QuadLattice::from_i64(&[[2, 0, -1, -1], [0, 2, -1, -1], [-1, -1, 2, -3], [-1, -1, -3, 2]])
            .expect("non-degenerate")
            .with_name("L(7)"),
    ]
}

/// Ordering by `(|d|, invariant factors, Gram matrix)`.
pub fn canonical_cmp(a: &QuadLattice, b: &QuadLattice) -> Ordering {
    a.discriminant()
        .abs()
        .cmp(&b.discriminant().abs())
        .then_with(|| a.invariant_factors().cmp(b.invariant_factors()))
        .then_with(|| a.gram().entries().cmp(b.gram().entries()))
}

fn angle_from_cos_sq(num: i64, den: i64) -> Option<Angle> {
    // cos²(π/m) for m = 2, 3, 4, 6 is 0, 1/4, 1/2, 3/4
    (0..4).find(|&k| 4 * num == k * den).map(|k| Angle::ALL[k as usize])
}

fn permuted(g: &[[i64; 4]; 4], p: [usize; 4]) -> [[i64; 4]; 4] {
    let mut out = [[0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = g[p[i]][p[j]];
        }
    }
    out
}

fn principal_minors_positive(g: &[[i64; 4]; 4], idx: [usize; 3]) -> bool {
    let m = |i: usize, j: usize| g[idx[i]][idx[j]];
    let d1 = m(0, 0);
    let d2 = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    let d3 = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
        + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    d1 > 0 && d2 > 0 && d3 > 0
}

fn det4(g: &[[i64; 4]; 4]) -> i64 {
    let rows: Vec<Vec<BigInt>> = g.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    i64::try_from(linalg::det(&rows)).expect("small determinant")
}

/// Which width bound limits `|g₃₄|`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundMode {
    /// The tabulated bound of the canonical angle set.
    #[default]
    Printed,
    /// The bound maximised over both labelings of the faces through the edge.
    Symmetric,
}

/// Every edge configuration before removing relabelings.
fn all_configurations(mode: BoundMode) -> Vec<EdgeConfiguration> {
    // Width bound per canonical angle set, rounded up to hundredths, as an
    // integer number of hundredths.
    let bounds: BTreeMap<AngleSet, (f64, i64)> = valid_angle_sets()
        .into_iter()
        .filter_map(|s| width_bound(&s).ok())
        .map(|b| {
            let t = match mode {
                BoundMode::Printed => b.t_display,
                BoundMode::Symmetric => b.t_symmetric_display,
            };
            (b.angle_set, (t, (t * 100.0).round() as i64))
        })
        .collect();
    let pairs = [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)];
    let mut out = Vec::new();
    for mask in 0..16u32 {
        let norms: [i64; 4] = std::array::from_fn(|i| 1 + ((mask >> i) & 1) as i64);
        // off-diagonal choices for the five intersecting pairs
        let choices: Vec<Vec<i64>> = pairs
            .iter()
            .map(|&(i, j)| {
                let kl = norms[i] * norms[j];
                (0..).map(|g: i64| -g).take_while(|g| g * g < kl).collect()
            })
            .collect();
        let mut idx = [0usize; 5];
        loop {
            let mut g = [[0i64; 4]; 4];
            for i in 0..4 {
                g[i][i] = norms[i];
            }
            let mut angles = [Angle::Half; 5];
            let mut ok = true;
            for (p, &(i, j)) in pairs.iter().enumerate() {
                let v = choices[p][idx[p]];
                g[i][j] = v;
                g[j][i] = v;
                match angle_from_cos_sq(v * v, norms[i] * norms[j]) {
                    Some(a) => angles[p] = a,
                    None => ok = false,
                }
            }
            let set = AngleSet::new(angles[0], angles[1], angles[2], angles[3], angles[4]);
            if let (true, Ok(set)) = (ok, set) {
                if let Some(&(t, hundredths)) = bounds.get(&set.canonical()) {
                    let kl = norms[2] * norms[3];
                    // |g₃₄| < t √(kl)  ⇔  g₃₄² · 10⁴ < (100 t)² kl
                    let mut g34 = 0i64;
                    while g34 * g34 * 10_000 < hundredths * hundredths * kl {
                        g[2][3] = -g34;
                        g[3][2] = -g34;
                        if det4(&g) < 0 && principal_minors_positive(&g, [0, 1, 2]) && principal_minors_positive(&g, [0, 1, 3]) {
                            let gram = GramMatrix::from_i64(&g).expect("non-degenerate");
                            out.push(EdgeConfiguration { gram, angle_set: set, t_used: t });
                        }
                        g34 += 1;
                    }
                }
            }
            // advance the mixed-radix counter
            let mut p = 0;
            while p < 5 {
                idx[p] += 1;
                if idx[p] < choices[p].len() {
                    break;
                }
                idx[p] = 0;
                p += 1;
            }
            if p == 5 {
                break;
            }
        }
    }
    out
}

fn relabel_key(g: &[[i64; 4]; 4]) -> [[i64; 4]; 4] {
    [[0, 1, 2, 3], [1, 0, 2, 3], [0, 1, 3, 2], [1, 0, 3, 2]]
        .into_iter()
        .map(|p| permuted(g, p))
        .min()
        .expect("four relabelings")
}

fn as_array(g: &GramMatrix) -> [[i64; 4]; 4] {
    let v = g.to_i64().expect("small entries");
    std::array::from_fn(|i| std::array::from_fn(|j| v[i][j]))
}

/// Configurations before and after identifying `u₁ ↔ u₂`, `u₃ ↔ u₄` relabelings.
#[derive(Debug, Clone, Serialize)]
pub struct Enumeration {
    pub mode: BoundMode,
    pub raw_count: usize,
    pub configurations: Vec<EdgeConfiguration>,
}

pub fn enumerate(mode: BoundMode) -> Enumeration {
    let all = all_configurations(mode);
    let raw_count = all.len();
    let mut seen: BTreeMap<[[i64; 4]; 4], EdgeConfiguration> = BTreeMap::new();
    for c in all {
        let key = relabel_key(&as_array(&c.gram));
        seen.entry(key).or_insert_with(|| {
            let gram = GramMatrix::from_i64(&key).expect("non-degenerate");
            let a = key;
            let angle = |i: usize, j: usize| angle_from_cos_sq(a[i][j] * a[i][j], a[i][i] * a[j][j]).expect("Coxeter angle");
            let angle_set = AngleSet::new(angle(0, 1), angle(0, 2), angle(1, 2), angle(0, 3), angle(1, 3)).expect("spherical");
            EdgeConfiguration { gram, angle_set, t_used: c.t_used }
        });
    }
    Enumeration { mode, raw_count, configurations: seen.into_values().collect() }
}

/// All edge configurations, one per relabeling class, in a fixed order.
pub fn enumerate_configurations() -> Vec<EdgeConfiguration> {
    enumerate(BoundMode::Printed).configurations
}

/// An isomorphism class of anisotropic configuration lattices.
#[derive(Debug, Clone, Serialize)]
pub struct LatticeClass {
    pub representative: QuadLattice,
    /// Indices of the member configurations.
    pub members: Vec<usize>,
    /// Other classes this one could be neither merged with nor separated from.
    pub unresolved_with: Vec<usize>,
}

/// Groups lattices into isomorphism classes. Inputs are visited in canonical
/// order, so each representative is the canonically smallest member.
fn group_by_isometry(lattices: &[(usize, QuadLattice)]) -> Vec<LatticeClass> {
    let mut order: Vec<&(usize, QuadLattice)> = lattices.iter().collect();
    order.sort_by(|a, b| canonical_cmp(&a.1, &b.1).then(a.0.cmp(&b.0)));
    let mut classes: Vec<LatticeClass> = Vec::new();
    for (i, l) in order {
        let verdicts: Vec<IsomVerdict> = classes.par_iter().map(|c| z_isomorphic(&c.representative, l, ISOM_HEIGHT)).collect();
        if let Some(k) = verdicts.iter().position(IsomVerdict::is_yes) {
            classes[k].members.push(*i);
            continue;
        }
        let unknown: Vec<usize> = verdicts.iter().enumerate().filter(|(_, v)| **v == IsomVerdict::Unknown).map(|(k, _)| k).collect();
        let id = classes.len();
        for &k in &unknown {
            classes[k].unresolved_with.push(id);
        }
        classes.push(LatticeClass { representative: l.clone(), members: vec![*i], unresolved_with: unknown });
    }
    classes
}

/// Keeps the anisotropic configurations and splits them into isomorphism classes.
pub fn anisotropic_classes(configs: &[EdgeConfiguration]) -> Result<Vec<LatticeClass>> {
    let lattices: Vec<Option<(usize, QuadLattice)>> = configs
        .par_iter()
        .enumerate()
        .map(|(i, c)| {
            let l = QuadLattice::new(c.gram.clone())?;
            Ok(is_anisotropic_over_q(&l)?.then_some((i, l)))
        })
        .collect::<Result<_>>()?;
    let lattices: Vec<(usize, QuadLattice)> = lattices.into_iter().flatten().collect();
    Ok(group_by_isometry(&lattices))
}

/// A lattice under test together with the roots its extensions must keep.
#[derive(Debug, Clone, Serialize)]
pub struct Candidate {
    pub name: String,
    pub lattice: QuadLattice,
    /// Roots `(coordinates, norm)` that stay crystallographic in every extension.
    #[serde(skip)]
    pub roots: Vec<(Vec<BigInt>, BigInt)>,
}

/// A proper finite-index extension found during saturation.
#[derive(Debug, Clone, Serialize)]
pub struct Extension {
    pub base: String,
    #[serde(serialize_with = "crate::report::big_str")]
    pub index: BigInt,
    /// Basis of the extension, as columns in coordinates of the base.
    #[serde(serialize_with = "crate::report::rat_mat")]
    pub basis_change: Vec<Vec<BigRational>>,
    pub gram: GramMatrix,
    /// The candidate it is isomorphic to.
    pub isomorphic_to: String,
}

/// An even index-2 sublattice relation among candidates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvenSublattice {
    pub lattice: String,
    /// Candidate isomorphic to the even sublattice, if any.
    pub even_sublattice: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Saturation {
    pub candidates: Vec<Candidate>,
    pub extensions: Vec<Extension>,
    pub even_sublattices: Vec<EvenSublattice>,
}

fn basis_roots(l: &QuadLattice) -> Vec<(Vec<BigInt>, BigInt)> {
    let n = l.rank();
    (0..n)
        .map(|i| {
            let e: Vec<BigInt> = (0..n).map(|j| BigInt::from((i == j) as i64)).collect();
            (e, l.gram().get(i, i).clone())
        })
        .collect()
}

fn name_for(l: &QuadLattice, refs: &[QuadLattice], fresh: &mut usize) -> String {
    for r in refs {
        if z_isomorphic(r, l, ISOM_HEIGHT).is_yes() {
            return r.name().unwrap_or_default().to_string();
        }
    }
    *fresh += 1;
    format!("X({fresh})")
}

fn find_isomorphic(candidates: &[Candidate], l: &QuadLattice) -> Option<usize> {
    candidates.iter().position(|c| z_isomorphic(&c.lattice, l, ISOM_HEIGHT).is_yes())
}

/// Closes the classes under root-preserving finite-index extensions, and
/// records which candidates are even sublattices of which.
pub fn saturate(classes: &[LatticeClass]) -> Result<Saturation> {
    let refs = reference_lattices();
    let mut fresh = 0;
    let mut candidates: Vec<Candidate> = Vec::new();
    for c in classes {
        let l = c.representative.clone();
        let name = name_for(&l, &refs, &mut fresh);
        let roots = basis_roots(&l);
        candidates.push(Candidate { name: name.clone(), lattice: l.with_name(name), roots });
    }
    let mut extensions = Vec::new();
    let mut next = 0;
    while next < candidates.len() {
        let base = candidates[next].clone();
        next += 1;
        for m in overlattices(&base.lattice, &base.roots) {
            if m.index == BigInt::from(1) {
                continue;
            }
            let lattice = m.lattice();
            let target = match find_isomorphic(&candidates, &lattice) {
                Some(k) => k,
                None => {
                    let name = name_for(&lattice, &refs, &mut fresh);
                    // express the kept roots in the new basis
                    let inv = linalg::inverse(&m.basis_change).expect("invertible");
                    let roots = base
                        .roots
                        .iter()
                        .map(|(u, k)| {
                            let u: Vec<BigRational> = u.iter().map(|x| BigRational::from_integer(x.clone())).collect();
                            let col = linalg::mul_rat(&inv, &u.iter().map(|x| vec![x.clone()]).collect::<Vec<_>>());
                            (col.iter().map(|r| r[0].to_integer()).collect(), k.clone())
                        })
                        .collect();
                    candidates.push(Candidate { name: name.clone(), lattice: lattice.clone().with_name(name), roots });
                    candidates.len() - 1
                }
            };
            extensions.push(Extension {
                base: base.name.clone(),
                index: m.index.clone(),
                basis_change: m.basis_change.clone(),
                gram: m.gram.clone(),
                isomorphic_to: candidates[target].name.clone(),
            });
        }
    }
    candidates.sort_by(|a, b| canonical_cmp(&a.lattice, &b.lattice));
    let even_sublattices = candidates
        .iter()
        .filter(|c| !c.lattice.is_even())
        .map(|c| {
            let sub = even_sublattice(&c.lattice).lattice;
            EvenSublattice {
                lattice: c.name.clone(),
                even_sublattice: find_isomorphic(&candidates, &sub).map(|k| candidates[k].name.clone()),
            }
        })
        .collect();
    Ok(Saturation { candidates, extensions, even_sublattices })
}

/// The reflectivity verdict of one candidate.
#[derive(Debug, Clone, Serialize)]
pub struct CandidateVerdict {
    pub name: String,
    pub lattice: QuadLattice,
    pub outcome: OneTwoOutcome,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub version: u32,
    pub budget: Budget,
    pub bound_mode: BoundMode,
    pub raw_configuration_count: usize,
    pub configurations: Vec<EdgeConfiguration>,
    pub anisotropic_configuration_count: usize,
    pub anisotropic_classes: Vec<LatticeClass>,
    pub extensions: Vec<Extension>,
    pub saturated_candidates: Vec<Candidate>,
    pub even_sublattices: Vec<EvenSublattice>,
    pub verdicts: Vec<CandidateVerdict>,
    pub reflective12: Vec<String>,
    pub not_reflective12: Vec<String>,
    pub undecided: Vec<String>,
    /// Whether a candidate and its even sublattice always share a verdict.
    pub closed_under_even_sublattice: bool,
}

impl ClassificationReport {
    pub fn verdict(&self, name: &str) -> Option<&OneTwoVerdict> {
        self.verdicts.iter().find(|v| v.name == name).map(|v| &v.outcome.verdict)
    }
}

/// Runs the whole classification with the tabulated width bounds.
pub fn classify(budget: &Budget) -> Result<ClassificationReport> {
    classify_with(budget, BoundMode::Printed)
}

pub fn classify_with(budget: &Budget, mode: BoundMode) -> Result<ClassificationReport> {
    let en = enumerate(mode);
    let classes = anisotropic_classes(&en.configurations)?;
    let anisotropic_configuration_count = classes.iter().map(|c| c.members.len()).sum();
    let sat = saturate(&classes)?;
    let outcomes: Vec<OneTwoOutcome> = sat
        .candidates
        .par_iter()
        .map(|c| one_two_reflectivity(&c.lattice, budget))
        .collect::<Result<_>>()?;
    let verdicts: Vec<CandidateVerdict> = sat
        .candidates
        .iter()
        .zip(outcomes)
        .map(|(c, outcome)| CandidateVerdict { name: c.name.clone(), lattice: c.lattice.clone(), outcome })
        .collect();
    let pick = |f: fn(&OneTwoVerdict) -> bool| -> Vec<String> {
        verdicts.iter().filter(|v| f(&v.outcome.verdict)).map(|v| v.name.clone()).collect()
    };
    let reflective12 = pick(|v| matches!(v, OneTwoVerdict::Reflective12));
    let not_reflective12 = pick(|v| matches!(v, OneTwoVerdict::NotReflective12 { .. }));
    let undecided = pick(|v| matches!(v, OneTwoVerdict::Undecided));
    let closed_under_even_sublattice = sat.even_sublattices.iter().all(|e| match &e.even_sublattice {
        Some(sub) => reflective12.contains(&e.lattice) == reflective12.contains(sub),
        None => true,
    });
    Ok(ClassificationReport {
        version: REPORT_VERSION,
        budget: budget.clone(),
        bound_mode: mode,
        raw_configuration_count: en.raw_count,
        configurations: en.configurations,
        anisotropic_configuration_count,
        anisotropic_classes: classes,
        extensions: sat.extensions,
        saturated_candidates: sat.candidates,
        even_sublattices: sat.even_sublattices,
        verdicts,
        reflective12,
        not_reflective12,
        undecided,
        closed_under_even_sublattice,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn cos_sq_angles() {
        assert_eq!(angle_from_cos_sq(0, 2), Some(Angle::Half));
        assert_eq!(angle_from_cos_sq(1, 4), Some(Angle::Third));
        assert_eq!(angle_from_cos_sq(1, 2), Some(Angle::Quarter));
        assert_eq!(angle_from_cos_sq(3, 4), Some(Angle::Sixth));
        assert_eq!(angle_from_cos_sq(1, 1), None);
    }

    #[test]
    fn configurations_are_hyperbolic_edges() {
        let en = enumerate(BoundMode::Printed);
        assert!(en.raw_count >= en.configurations.len());
        for c in &en.configurations {
            assert!(c.gram.det() < BigInt::zero());
            let g = as_array(&c.gram);
            assert!(principal_minors_positive(&g, [0, 1, 2]) && principal_minors_positive(&g, [0, 1, 3]));
            assert_eq!(relabel_key(&g), g);
            for i in 0..4 {
                assert!(g[i][i] == 1 || g[i][i] == 2);
            }
        }
    }

    #[test]
    fn printed_matrices_are_enumerated() {
        let en = enumerate_configurations();
        let grams: Vec<[[i64; 4]; 4]> = en.iter().map(|c| as_array(&c.gram)).collect();
        let g1 = [[1, 0, 0, -1], [0, 2, 0, -1], [0, 0, 1, -2], [-1, -1, -2, 2]];
        let g2 = [[1, -1, 0, 0], [-1, 2, 0, -1], [0, 0, 1, -4], [0, -1, -4, 2]];
        for g in [g1, g2] {
            assert!(grams.contains(&relabel_key(&g)));
        }
        // norms (1,1) never meet at an angle other than π/2
        for g in &grams {
            assert!(!(g[0][0] == 1 && g[1][1] == 1 && g[0][1] != 0));
        }
    }
}
