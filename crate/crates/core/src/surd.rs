//! Exact arithmetic in the biquadratic field Q(√2, √3).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `a + b√2 + c√3 + d√6` with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Surd {
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
    pub d: BigRational,
}

impl Surd {
    pub fn new(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Self {
        Surd { a, b, c, d }
    }

    pub fn rational(a: BigRational) -> Self {
        Surd::new(a, BigRational::zero(), BigRational::zero(), BigRational::zero())
    }

    pub fn zero() -> Self {
        Surd::rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Surd::rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        let f = |q: &BigRational| q.to_f64().unwrap_or(f64::NAN);
        f(&self.a) + f(&self.b) * 2f64.sqrt() + f(&self.c) * 3f64.sqrt() + f(&self.d) * 6f64.sqrt()
    }

    /// Exact sign, decided by squaring in the tower Q ⊂ Q(√2) ⊂ Q(√2, √3).
    pub fn signum(&self) -> Ordering {
        let u = (self.a.clone(), self.b.clone());
        let v = (self.c.clone(), self.d.clone());
        let su = sign2(&u);
        let sv = sign2(&v);
        if su == Ordering::Equal || su == sv {
            return sv.then(su);
        }
        if sv == Ordering::Equal {
            return su;
        }
        // u² − 3v² is nonzero because √3 ∉ Q(√2).
        let u2 = sq2(&u);
        let v2 = sq2(&v);
        let three = BigRational::from_integer(3.into());
        let w = (&u2.0 - &three * &v2.0, &u2.1 - &three * &v2.1);
        if sign2(&w) == Ordering::Greater {
            su
        } else {
            sv
        }
    }

    /// Multiplicative inverse, through the conjugates over Q(√2) and then Q.
    pub fn inv(&self) -> Option<Surd> {
        if self.is_zero() {
            return None;
        }
        let z = BigRational::zero();
        // x = U + V√3 with U = a + b√2, V = c + d√2
        let conj = Surd::new(self.a.clone(), self.b.clone(), -&self.c, -&self.d);
        let n3 = self * &conj;
        debug_assert!(n3.c.is_zero() && n3.d.is_zero());
        let (p, q) = (n3.a, n3.b);
        let two = BigRational::from_integer(2.into());
        let n2 = &p * &p - &two * &q * &q;
        let inv_n3 = Surd::new(&p / &n2, -&q / &n2, z.clone(), z);
        Some(&conj * &inv_n3)
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }
}

fn sign_q(q: &BigRational) -> Ordering {
    q.cmp(&BigRational::zero())
}

/// Sign of `p + q√2`.
fn sign2((p, q): &(BigRational, BigRational)) -> Ordering {
    let sp = sign_q(p);
    let sq = sign_q(q);
    if sp == Ordering::Equal || sp == sq {
        return sq.then(sp);
    }
    if sq == Ordering::Equal {
        return sp;
    }
    let two = BigRational::from_integer(2.into());
    if p * p > &two * q * q {
        sp
    } else {
        sq
    }
}

fn sq2((p, q): &(BigRational, BigRational)) -> (BigRational, BigRational) {
    let two = BigRational::from_integer(2.into());
    (p * p + &two * q * q, &two * p * q)
}

impl Add for &Surd {
    type Output = Surd;
    fn add(self, o: &Surd) -> Surd {
        Surd::new(&self.a + &o.a, &self.b + &o.b, &self.c + &o.c, &self.d + &o.d)
    }
}

impl Sub for &Surd {
    type Output = Surd;
    fn sub(self, o: &Surd) -> Surd {
        Surd::new(&self.a - &o.a, &self.b - &o.b, &self.c - &o.c, &self.d - &o.d)
    }
}

impl Neg for &Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd::new(-&self.a, -&self.b, -&self.c, -&self.d)
    }
}

impl Mul for &Surd {
    type Output = Surd;
    fn mul(self, o: &Surd) -> Surd {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let (e, f, g, h) = (&o.a, &o.b, &o.c, &o.d);
        let k = |n: i64| BigRational::from_integer(n.into());
        // √2√2 = 2, √3√3 = 3, √6√6 = 6, √2√3 = √6, √2√6 = 2√3, √3√6 = 3√2.
        Surd::new(
            a * e + k(2) * b * f + k(3) * c * g + k(6) * d * h,
            a * f + b * e + k(3) * (c * h + d * g),
            a * g + c * e + k(2) * (b * h + d * f),
            a * h + d * e + b * g + c * f,
        )
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (q, s) in [(&self.a, ""), (&self.b, "√2"), (&self.c, "√3"), (&self.d, "√6")] {
            if !q.is_zero() {
                let sign = if q.is_negative() { "-" } else { "+" };
                let mag = q.abs();
                let body = if s.is_empty() {
                    mag.to_string()
                } else if mag.is_one() {
                    s.to_string()
                } else {
                    format!("{mag}{s}")
                };
                parts.push((sign, body));
            }
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        for (i, (sign, body)) in parts.iter().enumerate() {
            match (i, *sign) {
                (0, "-") => write!(f, "-{body}")?,
                (0, _) => write!(f, "{body}")?,
                (_, s) => write!(f, " {s} {body}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn s(a: i64, b: i64, c: i64, d: i64) -> Surd {
        Surd::new(rat(a, 1), rat(b, 1), rat(c, 1), rat(d, 1))
    }

    #[test]
    fn product_of_radicals() {
        let r2 = s(0, 1, 0, 0);
        let r3 = s(0, 0, 1, 0);
        assert_eq!(&r2 * &r2, s(2, 0, 0, 0));
        assert_eq!(&r2 * &r3, s(0, 0, 0, 1));
        assert_eq!(&s(0, 0, 0, 1) * &r3, s(0, 3, 0, 0));
    }

    #[test]
    fn exact_sign_matches_float() {
        for a in -4..=4 {
            for b in -3..=3 {
                for c in -3..=3 {
                    for d in -2..=2 {
                        let x = s(a, b, c, d);
                        let v = x.to_f64();
                        let expected = if x.is_zero() {
                            Ordering::Equal
                        } else if v > 0.0 {
                            Ordering::Greater
                        } else {
                            Ordering::Less
                        };
                        assert_eq!(x.signum(), expected, "{x}");
                    }
                }
            }
        }
    }

    #[test]
    fn inverse() {
        let x = s(1, -2, 3, 1);
        assert_eq!(&x * &x.inv().unwrap(), Surd::one());
        assert!(Surd::zero().inv().is_none());
    }

    #[test]
    fn display() {
        assert_eq!(s(1, -2, 0, 1).to_string(), "1 - 2√2 + √6");
        assert_eq!(s(0, 0, 0, 0).to_string(), "0");
    }
}
