//! The vector model of Lobachevsky space: reflections and the mutual position
//! of mirrors, all in exact arithmetic via squared cosines.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::lattice::QuadLattice;
use crate::{Error, Result};

/// How two mirrors meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MirrorKind {
    /// Intersecting at angle π/m; `None` when the angle is not of that form
    /// (or the pair is obtuse).
    Intersecting(Option<u32>),
    Parallel,
    Divergent,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MirrorRelation {
    pub kind: MirrorKind,
    /// `(e,f)² / ((e,e)(f,f))`; for divergent mirrors this is cosh² of their distance.
    #[serde(serialize_with = "crate::report::rat_str")]
    pub cos_sq: BigRational,
    pub sign_of_product: i8,
}

impl MirrorRelation {
    pub fn coxeter_order(&self) -> Option<u32> {
        match self.kind {
            MirrorKind::Intersecting(m) => m,
            _ => None,
        }
    }
}

pub fn mirror_relation(gram_ee: &BigInt, gram_ff: &BigInt, gram_ef: &BigInt) -> MirrorRelation {
    let cos_sq = BigRational::new(gram_ef * gram_ef, gram_ee * gram_ff);
    let sign_of_product = if gram_ef.is_positive() {
        1
    } else if gram_ef.is_negative() {
        -1
    } else {
        0
    };
    let one = BigRational::one();
    let kind = if cos_sq > one {
        MirrorKind::Divergent
    } else if cos_sq == one {
        MirrorKind::Parallel
    } else {
        let m = if sign_of_product > 0 {
            None
        } else {
            let four = &cos_sq * BigRational::from_integer(BigInt::from(4));
            if four.is_zero() {
                Some(2)
            } else if four.is_one() {
                Some(3)
            } else if four == BigRational::from_integer(BigInt::from(2)) {
                Some(4)
            } else if four == BigRational::from_integer(BigInt::from(3)) {
                Some(6)
            } else {
                None
            }
        };
        MirrorKind::Intersecting(m)
    };
    MirrorRelation { kind, cos_sq, sign_of_product }
}

/// `x − (2(e,x)/(e,e))·e`.
pub fn reflect(l: &QuadLattice, e: &[BigInt], x: &[BigInt]) -> Result<Vec<BigRational>> {
    let ee = l.norm(e);
    if !ee.is_positive() {
        return Err(Error::NotSpacelike);
    }
    let c = BigRational::new(BigInt::from(2) * l.inner(e, x), ee);
    Ok(x.iter()
        .zip(e)
        .map(|(xi, ei)| BigRational::from_integer(xi.clone()) - &c * BigRational::from_integer(ei.clone()))
        .collect())
}

/// Reflection in a root, staying in the lattice.
pub fn reflect_int(l: &QuadLattice, e: &[BigInt], x: &[BigInt]) -> Result<Vec<BigInt>> {
    let r = reflect(l, e, x)?;
    if r.iter().all(|q| q.is_integer()) {
        Ok(r.into_iter().map(|q| q.to_integer()).collect())
    } else {
        Err(Error::InvalidArgument("reflection does not preserve the lattice".into()))
    }
}

/// `sinh² ρ(v0, H_a) = (a,v0)² / ((a,a)·(−(v0,v0)))`.
pub fn point_mirror_distance_sq(l: &QuadLattice, v0: &[BigInt], a: &[BigInt]) -> Result<BigRational> {
    let vv = l.norm(v0);
    let aa = l.norm(a);
    if !vv.is_negative() {
        return Err(Error::InvalidArgument("basic point must have negative norm".into()));
    }
    if !aa.is_positive() {
        return Err(Error::InvalidArgument("root must have positive norm".into()));
    }
    let av = l.inner(a, v0);
    Ok(BigRational::new(&av * &av, aa * (-vv)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn reflection_examples() {
        let l = QuadLattice::diagonal(&[-7, 1, 1, 1]).unwrap();
        let e = ints(&[0, 1, -1, 0]);
        assert_eq!(reflect_int(&l, &e, &e).unwrap(), ints(&[0, -1, 1, 0]));
        assert_eq!(reflect_int(&l, &e, &ints(&[0, 0, 0, 1])).unwrap(), ints(&[0, 0, 0, 1]));
        assert_eq!(reflect_int(&l, &e, &ints(&[0, 1, 0, 0])).unwrap(), ints(&[0, 0, 1, 0]));
        assert_eq!(reflect(&l, &ints(&[1, 0, 0, 0]), &e), Err(Error::NotSpacelike));
    }

    #[test]
    fn relation_examples() {
        let r = mirror_relation(&int(2), &int(2), &int(-1));
        assert_eq!(r.kind, MirrorKind::Intersecting(Some(3)));
        assert_eq!(r.cos_sq, rat(1, 4));
        let r = mirror_relation(&int(5), &int(5), &int(-70));
        assert_eq!(r.kind, MirrorKind::Divergent);
        assert_eq!(r.cos_sq, rat(196, 1));
        let r = mirror_relation(&int(1), &int(1), &int(0));
        assert_eq!(r.kind, MirrorKind::Intersecting(Some(2)));
        assert_eq!(mirror_relation(&int(1), &int(2), &int(-1)).kind, MirrorKind::Intersecting(Some(4)));
        assert_eq!(mirror_relation(&int(1), &int(3), &int(-1)).kind, MirrorKind::Intersecting(None));
        assert_eq!(mirror_relation(&int(2), &int(2), &int(-2)).kind, MirrorKind::Parallel);
        assert_eq!(mirror_relation(&int(2), &int(6), &int(-3)).kind, MirrorKind::Intersecting(Some(6)));
    }

    #[test]
    fn distance_examples() {
        let l1 = QuadLattice::diagonal(&[-7, 1, 1, 1]).unwrap();
        let v0 = ints(&[1, 0, 0, 0]);
        assert_eq!(point_mirror_distance_sq(&l1, &v0, &ints(&[0, 1, -1, 0])).unwrap(), rat(0, 1));
        let l3 = QuadLattice::diagonal(&[-3, 5, 1, 1]).unwrap();
        assert_eq!(point_mirror_distance_sq(&l3, &v0, &ints(&[1, 0, 3, 0])).unwrap(), rat(1, 2));
        assert!(point_mirror_distance_sq(&l3, &ints(&[0, 1, 0, 0]), &ints(&[1, 0, 3, 0])).is_err());
    }
}
