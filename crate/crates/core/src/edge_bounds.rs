//! Width bounds for the outermost edge of a compact Coxeter polyhedron in
//! three-dimensional Lobachevsky space.
//!
//! Around an edge `E = F₁ ∩ F₂` with endpoints `V₁ = F₁∩F₂∩F₃`,
//! `V₂ = F₁∩F₂∩F₄` the five dihedral angles `(α₁₂, α₁₃, α₂₃, α₁₄, α₂₄)`
//! bound the length of `E`, which in turn bounds `|(u₃, u₄)|` for the unit
//! normals of the framing faces `F₃`, `F₄`.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;

use num_rational::BigRational;
use serde::{Serialize, Serializer};

use crate::arith::rat;
use crate::surd::Surd;
use crate::{Error, Result};

/// A dihedral angle `π/m`, `m ∈ {2, 3, 4, 6}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Angle {
    Half,
    Third,
    Quarter,
    Sixth,
}

impl Angle {
    pub const ALL: [Angle; 4] = [Angle::Half, Angle::Third, Angle::Quarter, Angle::Sixth];

    pub fn denominator(self) -> u32 {
        match self {
            Angle::Half => 2,
            Angle::Third => 3,
            Angle::Quarter => 4,
            Angle::Sixth => 6,
        }
    }

    pub fn from_denominator(m: u32) -> Option<Angle> {
        Angle::ALL.into_iter().find(|a| a.denominator() == m)
    }

    pub fn radians(self) -> f64 {
        PI / self.denominator() as f64
    }

    pub fn cos(self) -> Surd {
        match self {
            Angle::Half => Surd::zero(),
            Angle::Third => Surd::rational(rat(1, 2)),
            Angle::Quarter => Surd::new(rat(0, 1), rat(1, 2), rat(0, 1), rat(0, 1)),
            Angle::Sixth => Surd::new(rat(0, 1), rat(0, 1), rat(1, 2), rat(0, 1)),
        }
    }

    pub fn sin(self) -> Surd {
        match self {
            Angle::Half => Surd::one(),
            Angle::Third => Surd::new(rat(0, 1), rat(0, 1), rat(1, 2), rat(0, 1)),
            Angle::Quarter => Surd::new(rat(0, 1), rat(1, 2), rat(0, 1), rat(0, 1)),
            Angle::Sixth => Surd::rational(rat(1, 2)),
        }
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pi/{}", self.denominator())
    }
}

impl Serialize for Angle {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Serialize for Surd {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The dihedral angles `(α₁₂, α₁₃, α₂₃, α₁₄, α₂₄)` around an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct AngleSet {
    pub alpha12: Angle,
    pub alpha13: Angle,
    pub alpha23: Angle,
    pub alpha14: Angle,
    pub alpha24: Angle,
}

impl AngleSet {
    /// Builds an angle set; both vertex triangles must be spherical.
    pub fn new(alpha12: Angle, alpha13: Angle, alpha23: Angle, alpha14: Angle, alpha24: Angle) -> Result<Self> {
        let s = AngleSet { alpha12, alpha13, alpha23, alpha14, alpha24 };
        if !s.is_spherical() {
            return Err(Error::IllposedAngleSet(format!("{s}: vertex angle sum not above pi")));
        }
        Ok(s)
    }

    /// Builds from denominators `m` of the angles `π/m`.
    pub fn from_denominators(m: [u32; 5]) -> Result<Self> {
        let a = |k: u32| Angle::from_denominator(k).ok_or_else(|| Error::InvalidArgument(format!("angle pi/{k} not allowed")));
        AngleSet::new(a(m[0])?, a(m[1])?, a(m[2])?, a(m[3])?, a(m[4])?)
    }

    pub fn denominators(&self) -> [u32; 5] {
        self.angles().map(Angle::denominator)
    }

    pub fn angles(&self) -> [Angle; 5] {
        [self.alpha12, self.alpha13, self.alpha23, self.alpha14, self.alpha24]
    }

    fn unchecked(a: [Angle; 5]) -> Self {
        AngleSet { alpha12: a[0], alpha13: a[1], alpha23: a[2], alpha14: a[3], alpha24: a[4] }
    }

    /// Both vertex angle sums exceed π: `1/m₁₂ + 1/m₁₃ + 1/m₂₃ > 1` etc.
    pub fn is_spherical(&self) -> bool {
        let over = |x: Angle, y: Angle, z: Angle| 12 / x.denominator() + 12 / y.denominator() + 12 / z.denominator() > 12;
        over(self.alpha12, self.alpha13, self.alpha23) && over(self.alpha12, self.alpha14, self.alpha24)
    }

    /// Relabels `F₁ ↔ F₂`.
    pub fn swap_12(&self) -> Self {
        AngleSet::unchecked([self.alpha12, self.alpha23, self.alpha13, self.alpha24, self.alpha14])
    }

    /// Relabels `F₃ ↔ F₄`.
    pub fn swap_34(&self) -> Self {
        AngleSet::unchecked([self.alpha12, self.alpha14, self.alpha24, self.alpha13, self.alpha23])
    }

    pub fn orbit(&self) -> Vec<AngleSet> {
        let mut v = vec![*self, self.swap_12(), self.swap_34(), self.swap_12().swap_34()];
        v.sort();
        v.dedup();
        v
    }

    /// Orbit member with lexicographically smallest denominators.
    pub fn canonical(&self) -> AngleSet {
        self.orbit()[0]
    }
}

impl fmt::Display for AngleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d, e] = self.angles();
        write!(f, "({a}, {b}, {c}, {d}, {e})")
    }
}

/// `(cos y + cos α₁₂ cos x) / (sin α₁₂ sin x)`, required to lie in (−1, 1).
fn plane_cos(a12: Angle, x: Angle, y: Angle) -> Result<Surd> {
    let num = &y.cos() + &(&a12.cos() * &x.cos());
    let den = &a12.sin() * &x.sin();
    if (&den - &num).signum() != Ordering::Greater || (&den + &num).signum() != Ordering::Greater {
        return Err(Error::DegenerateVertex);
    }
    Ok(&num * &den.inv().expect("sines of dihedral angles are nonzero"))
}

/// Exact cosines of `(α₁, α₂, α₃, α₄)`.
fn plane_cosines(s: &AngleSet) -> Result<[Surd; 4]> {
    Ok([
        plane_cos(s.alpha12, s.alpha13, s.alpha23)?,
        plane_cos(s.alpha12, s.alpha14, s.alpha24)?,
        plane_cos(s.alpha12, s.alpha23, s.alpha13)?,
        plane_cos(s.alpha12, s.alpha24, s.alpha14)?,
    ])
}

/// Plane angles `(α₁, α₂, α₃, α₄)` of the faces at the endpoints of the edge.
pub fn plane_angles(s: &AngleSet) -> Result<[f64; 4]> {
    Ok(plane_cosines(s)?.map(|c| c.to_f64().acos()))
}

/// `A₀ = tanh(ln cot(α₁₂/4))`.
pub fn a0(alpha12: Angle) -> f64 {
    (1.0 / (alpha12.radians() / 4.0).tan()).ln().tanh()
}

fn f_pair(a0: f64, x: f64, y: f64) -> f64 {
    (a0 / (x / 2.0).tan()).asinh() + (a0 / (y / 2.0).tan()).asinh()
}

/// Upper bound on the edge length, `asinh(A₀/tan(α₃/2)) + asinh(A₀/tan(α₄/2))`.
pub fn edge_length_bound(s: &AngleSet) -> Result<f64> {
    let p = plane_angles(s)?;
    Ok(f_pair(a0(s.alpha12), p[2], p[3]))
}

/// The same bound maximised over both labelings of the faces through the edge.
pub fn edge_length_bound_symmetric(s: &AngleSet) -> Result<f64> {
    let p = plane_angles(s)?;
    let a = a0(s.alpha12);
    Ok(f_pair(a, p[2], p[3]).max(f_pair(a, p[0], p[1])))
}

/// Exact cofactors of the unit-normal Gram matrix `G(T)`: `G₃₃`, `G₄₄` and
/// `G₃₄ = c₁T + c₀`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cofactors {
    pub g33: Surd,
    pub g44: Surd,
    pub c0: Surd,
    pub c1: Surd,
}

fn normal_gram(s: &AngleSet, t: Surd) -> [[Surd; 4]; 4] {
    let z = Surd::one();
    let c = |a: Angle| -&a.cos();
    [
        [z.clone(), c(s.alpha12), c(s.alpha13), c(s.alpha14)],
        [c(s.alpha12), z.clone(), c(s.alpha23), c(s.alpha24)],
        [c(s.alpha13), c(s.alpha23), z.clone(), -&t],
        [c(s.alpha14), c(s.alpha24), -&t, z],
    ]
}

fn cofactor(m: &[[Surd; 4]; 4], i: usize, j: usize) -> Surd {
    let rows: Vec<usize> = (0..4).filter(|&r| r != i).collect();
    let cols: Vec<usize> = (0..4).filter(|&c| c != j).collect();
    let e = |r: usize, c: usize| &m[rows[r]][cols[c]];
    let minor2 = |r0: usize, r1: usize, c0: usize, c1: usize| &(e(r0, c0) * e(r1, c1)) - &(e(r0, c1) * e(r1, c0));
    let d = &(&(e(0, 0) * &minor2(1, 2, 1, 2)) - &(e(0, 1) * &minor2(1, 2, 0, 2))) + &(e(0, 2) * &minor2(1, 2, 0, 1));
    if (i + j) % 2 == 0 {
        d
    } else {
        -&d
    }
}

pub fn cofactors(s: &AngleSet) -> Cofactors {
    let g0 = normal_gram(s, Surd::zero());
    let g1 = normal_gram(s, Surd::one());
    let c0 = cofactor(&g0, 2, 3);
    let c1 = &cofactor(&g1, 2, 3) - &c0;
    Cofactors { g33: cofactor(&g0, 2, 2), g44: cofactor(&g0, 3, 3), c0, c1 }
}

/// The width bound of an angle set with the quantities it is built from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdgeBound {
    pub angle_set: AngleSet,
    /// Bound on `|(u₃, u₄)|` from the printed endpoint labeling.
    pub t: f64,
    /// `t` rounded up to hundredths, decided exactly.
    pub t_display: f64,
    /// Bound with the edge length maximised over both labelings of `F₁`, `F₂`.
    pub t_symmetric: f64,
    pub t_symmetric_display: f64,
    pub a0: f64,
    pub plane_angles: [f64; 4],
    pub f: f64,
    pub f_symmetric: f64,
    pub cofactors: Cofactors,
}

/// Decides `t ≤ q` for the bound built from the plane angles with cosines
/// `cx`, `cy`.
///
/// With `A₀² = (1 + cos α₁₂)/2` and `u² = A₀²(1 + c)/(1 − c)` for each plane
/// angle, `cosh F = √((1+u²)(1+w²)) + √(u²w²)`, so `t ≤ q` reads
/// `√(PR) + √(QR) ≤ c₀ + c₁q` with every radicand in Q(√2, √3).
fn t_at_most(a12: Angle, cx: &Surd, cy: &Surd, k: &Cofactors, q: &BigRational) -> bool {
    let one = Surd::one();
    let a0_sq = &(&one + &a12.cos()) * &Surd::rational(rat(1, 2));
    let u_sq = |c: &Surd| &(&a0_sq * &(&one + c)) * &(&one - c).inv().expect("plane angle is not zero");
    let (u2, w2) = (u_sq(cx), u_sq(cy));
    let r = &k.g33 * &k.g44;
    let a = &(&(&one + &u2) * &(&one + &w2)) * &r;
    let b = &(&u2 * &w2) * &r;
    let rhs = &k.c0 + &(&k.c1 * &Surd::rational(q.clone()));
    if rhs.signum() == Ordering::Less {
        return false;
    }
    // √a + √b ≤ rhs  ⇔  2√(ab) ≤ rhs² − a − b
    let w = &(&(&rhs * &rhs) - &a) - &b;
    if w.signum() == Ordering::Less {
        return false;
    }
    let four = Surd::rational(rat(4, 1));
    (&(&w * &w) - &(&four * &(&a * &b))).signum() != Ordering::Less
}

/// Smallest `m/100 ≥ t`, starting from the floating-point estimate.
fn ceil_hundredths(a12: Angle, cx: &Surd, cy: &Surd, k: &Cofactors, estimate: f64) -> f64 {
    let at_most = |m: i64| t_at_most(a12, cx, cy, k, &rat(m, 100));
    let mut m = (estimate * 100.0).ceil() as i64;
    while !at_most(m) {
        m += 1;
    }
    while at_most(m - 1) {
        m -= 1;
    }
    m as f64 / 100.0
}

fn solve_t(f: f64, k: &Cofactors) -> f64 {
    (f.cosh() * (k.g33.to_f64() * k.g44.to_f64()).sqrt() - k.c0.to_f64()) / k.c1.to_f64()
}

/// Solves `G₃₄ / √(G₃₃G₄₄) < cosh F` for `T`.
pub fn width_bound(s: &AngleSet) -> Result<EdgeBound> {
    let planes = plane_angles(s)?;
    let f = edge_length_bound(s)?;
    let f_symmetric = edge_length_bound_symmetric(s)?;
    let k = cofactors(s);
    let cs = plane_cosines(s)?;
    if !k.c1.is_positive() {
        return Err(Error::IllposedAngleSet(format!("{s}: coefficient of T in G34 is {}", k.c1)));
    }
    if !(&k.g33 * &k.g44).is_positive() {
        return Err(Error::IllposedAngleSet(format!("{s}: G33*G44 = {} not positive", &k.g33 * &k.g44)));
    }
    let t = solve_t(f, &k);
    let t_display = ceil_hundredths(s.alpha12, &cs[2], &cs[3], &k, t);
    let t_other = ceil_hundredths(s.alpha12, &cs[0], &cs[1], &k, solve_t(f_pair(a0(s.alpha12), planes[0], planes[1]), &k));
    Ok(EdgeBound {
        angle_set: *s,
        t,
        t_display,
        t_symmetric: solve_t(f_symmetric, &k),
        t_symmetric_display: t_display.max(t_other),
        a0: a0(s.alpha12),
        plane_angles: planes,
        f,
        f_symmetric,
        cofactors: k,
    })
}

/// Canonical representatives of all angle sets with both vertices spherical,
/// up to relabeling `F₁ ↔ F₂` and `F₃ ↔ F₄`.
pub fn lemma_orbits() -> Vec<AngleSet> {
    let mut out = Vec::new();
    for a in Angle::ALL {
        for b in Angle::ALL {
            for c in Angle::ALL {
                for d in Angle::ALL {
                    for e in Angle::ALL {
                        let s = AngleSet::unchecked([a, b, c, d, e]);
                        if s.is_spherical() && s.canonical() == s {
                            out.push(s);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Orbits that can carry an outermost edge: those whose width bound admits
/// some `T > 0`.
pub fn valid_angle_sets() -> Vec<AngleSet> {
    lemma_orbits()
        .into_iter()
        .filter(|s| match width_bound(s) {
            Ok(b) => b.t > 0.0,
            Err(_) => true,
        })
        .collect()
}

/// A row of the bounds table; rows whose bound is ill-posed carry the reason.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundRow {
    pub angle_set: AngleSet,
    pub bound: Option<EdgeBound>,
    pub flag: Option<String>,
}

pub fn bounds_table() -> Vec<BoundRow> {
    valid_angle_sets()
        .into_iter()
        .map(|s| match width_bound(&s) {
            Ok(b) => BoundRow { angle_set: s, bound: Some(b), flag: None },
            Err(e) => BoundRow { angle_set: s, bound: None, flag: Some(e.to_string()) },
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(m: [u32; 5]) -> AngleSet {
        AngleSet::from_denominators(m).unwrap()
    }

    #[test]
    fn orthogonal_plane_angles() {
        let p = plane_angles(&set([6, 2, 2, 2, 2])).unwrap();
        assert!((p[2] - PI / 2.0).abs() < 1e-12 && (p[3] - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn mixed_plane_angles() {
        let p = plane_angles(&set([4, 2, 3, 3, 2])).unwrap();
        assert!((p[2] - (1.0 / 3f64.sqrt()).acos()).abs() < 1e-12);
        assert!((p[2] - 0.955317).abs() < 1e-6);
        assert!((p[3] - PI / 4.0).abs() < 1e-12);
    }

    #[test]
    fn a0_values() {
        assert!((a0(Angle::Half) - 0.5f64.sqrt()).abs() < 1e-12);
        // tanh(ln cot x) = cos 2x
        for a in Angle::ALL {
            assert!((a0(a) - (a.radians() / 2.0).cos()).abs() < 1e-12);
        }
    }

    #[test]
    fn block_diagonal_case() {
        let s = set([6, 2, 2, 2, 2]);
        let f = edge_length_bound(&s).unwrap();
        assert!((f - 2.0 * a0(Angle::Sixth).asinh()).abs() < 1e-12);
        assert!((f - 2.0 * (PI / 12.0).cos().asinh()).abs() < 1e-12);
        let k = cofactors(&s);
        let quarter = Surd::rational(rat(1, 4));
        assert_eq!(k.g33, quarter);
        assert_eq!(k.g44, quarter);
        assert_eq!(k.c1, quarter);
        assert!(k.c0.is_zero());
        let b = width_bound(&s).unwrap();
        assert!((b.t - f.cosh()).abs() < 1e-12);
        assert_eq!(b.t_display, 2.87);
    }

    #[test]
    fn table_shape() {
        assert_eq!(lemma_orbits().len(), 45);
        let rows = bounds_table();
        assert_eq!(rows.len(), 44);
        assert!(rows.iter().all(|r| r.flag.is_none()));
        let best = rows.iter().filter_map(|r| r.bound.as_ref()).max_by(|a, b| a.t.total_cmp(&b.t)).unwrap();
        assert_eq!(best.angle_set, set([4, 2, 3, 3, 2]));
        assert_eq!(best.t_display, 4.14);
        assert!(rows.iter().any(|r| r.angle_set == set([2, 2, 2, 2, 2])));
    }

    #[test]
    fn exact_hundredths_are_not_rounded_past() {
        // all plane angles right: cosh F = 2 + cos α₁₂
        assert_eq!(width_bound(&set([2, 2, 2, 2, 2])).unwrap().t_display, 2.0);
        assert_eq!(width_bound(&set([3, 2, 2, 2, 2])).unwrap().t_display, 2.5);
    }

    #[test]
    fn non_spherical_rejected() {
        assert!(matches!(AngleSet::from_denominators([3, 3, 3, 2, 2]), Err(Error::IllposedAngleSet(_))));
    }
}
