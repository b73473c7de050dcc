//! Exact scalars: rationals and Gaussian rationals behind a small `Field` trait.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

pub type Q = BigRational;

/// Build a rational `n/d`.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Parse `p`, `p/q` or a decimal-free signed rational.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).ok()?;
            let d = BigInt::from_str(d.trim()).ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Q::new(n, d))
        }
        None => BigInt::from_str(s).ok().map(Q::from_integer),
    }
}

pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn conj(&self) -> Self;
    fn from_q(x: Q) -> Self;
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn div_ref(&self, o: &Self) -> Self;
    /// A real size used only to report residuals (max of |re|, |im|).
    fn magnitude(&self) -> Q;
    fn render(&self) -> String;
}

impl Field for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn from_q(x: Q) -> Self {
        x
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn div_ref(&self, o: &Self) -> Self {
        self / o
    }
    fn magnitude(&self) -> Q {
        self.abs()
    }
    fn render(&self) -> String {
        fmt_q(self)
    }
}

/// Gaussian rational `re + i im`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Qi {
    pub re: Q,
    pub im: Q,
}

impl Qi {
    pub fn new(re: Q, im: Q) -> Self {
        Qi { re, im }
    }
    pub fn real(re: Q) -> Self {
        Qi { re, im: <Q as Zero>::zero() }
    }
    pub fn imag(im: Q) -> Self {
        Qi { re: <Q as Zero>::zero(), im }
    }
    pub fn i() -> Self {
        Qi::imag(<Q as One>::one())
    }
    pub fn is_real(&self) -> bool {
        Zero::is_zero(&self.im)
    }
    pub fn is_imag(&self) -> bool {
        Zero::is_zero(&self.re)
    }
    pub fn norm_sqr(&self) -> Q {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl fmt::Display for Qi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Add for Qi {
    type Output = Qi;
    fn add(self, o: Qi) -> Qi {
        self.add_ref(&o)
    }
}
impl Sub for Qi {
    type Output = Qi;
    fn sub(self, o: Qi) -> Qi {
        self.sub_ref(&o)
    }
}
impl Mul for Qi {
    type Output = Qi;
    fn mul(self, o: Qi) -> Qi {
        self.mul_ref(&o)
    }
}
impl Div for Qi {
    type Output = Qi;
    fn div(self, o: Qi) -> Qi {
        self.div_ref(&o)
    }
}
impl Neg for Qi {
    type Output = Qi;
    fn neg(self) -> Qi {
        Qi { re: -self.re, im: -self.im }
    }
}

impl Field for Qi {
    fn zero() -> Self {
        Qi::real(<Q as Zero>::zero())
    }
    fn one() -> Self {
        Qi::real(<Q as One>::one())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn conj(&self) -> Self {
        Qi { re: self.re.clone(), im: -&self.im }
    }
    fn from_q(x: Q) -> Self {
        Qi::real(x)
    }
    fn add_ref(&self, o: &Self) -> Self {
        Qi { re: &self.re + &o.re, im: &self.im + &o.im }
    }
    fn sub_ref(&self, o: &Self) -> Self {
        Qi { re: &self.re - &o.re, im: &self.im - &o.im }
    }
    fn mul_ref(&self, o: &Self) -> Self {
        if Zero::is_zero(&self.im) && Zero::is_zero(&o.im) {
            return Qi::real(&self.re * &o.re);
        }
        Qi {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
    fn div_ref(&self, o: &Self) -> Self {
        let n = o.norm_sqr();
        assert!(!Zero::is_zero(&n), "division by zero");
        let num = self.mul_ref(&o.conj());
        Qi { re: num.re / &n, im: num.im / n }
    }
    fn magnitude(&self) -> Q {
        let a = self.re.abs();
        let b = self.im.abs();
        if a > b {
            a
        } else {
            b
        }
    }
    fn render(&self) -> String {
        match (Zero::is_zero(&self.re), Zero::is_zero(&self.im)) {
            (_, true) => fmt_q(&self.re),
            (true, false) => format!("{}i", fmt_q(&self.im)),
            (false, false) => {
                if self.im.is_negative() {
                    format!("{}-{}i", fmt_q(&self.re), fmt_q(&-&self.im))
                } else {
                    format!("{}+{}i", fmt_q(&self.re), fmt_q(&self.im))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        assert_eq!(parse_q("-3/6"), Some(q(-1, 2)));
        assert_eq!(parse_q("7"), Some(qi(7)));
        assert_eq!(parse_q("1/0"), None);
        assert_eq!(fmt_q(&q(4, 6)), "2/3");
    }

    #[test]
    fn gaussian_arithmetic() {
        let a = Qi::new(qi(1), qi(2));
        let b = Qi::new(qi(3), qi(-1));
        let p = a.mul_ref(&b);
        assert_eq!(p, Qi::new(qi(5), qi(5)));
        assert_eq!(p.div_ref(&b), a);
        assert_eq!(Qi::i().mul_ref(&Qi::i()), -Qi::one());
        assert_eq!(Qi::new(qi(1), qi(-2)).render(), "1-2i");
    }
}
