//! Coefficient rings and fields.
//!
//! Arithmetic is routed through ring/field handle objects rather than plain
//! trait impls on the element types, so that parametrized domains (number
//! fields, polynomial rings used as coefficient rings) carry their context
//! with them. Elements are plain data.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;
pub type Int = BigInt;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// Renders a rational as `p` or `p/q`.
pub fn fmt_rat(q: &Rat) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// A commutative ring with exact division test.
pub trait Ring: Clone + PartialEq + std::fmt::Debug {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Exact quotient `a / b`, or `None` when `b` does not divide `a`.
    fn exact_div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;
    fn from_rat(&self, q: &Rat) -> Self::Elem;
    fn fmt_elem(&self, a: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_rat(&rat(n))
    }
    fn pow(&self, a: &Self::Elem, n: usize) -> Self::Elem {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.mul(&acc, a);
        }
        acc
    }
}

/// A field: every nonzero element is invertible.
pub trait Field: Ring {
    /// Inverse of a nonzero element. Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }
    /// Round-trips the element back into Q when it lies there.
    fn to_rat(&self, a: &Self::Elem) -> Option<Rat>;
}

/// The rational numbers.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = Rat;

    fn zero(&self) -> Rat {
        Rat::zero()
    }
    fn one(&self) -> Rat {
        Rat::one()
    }
    fn is_zero(&self, a: &Rat) -> bool {
        a.is_zero()
    }
    fn neg(&self, a: &Rat) -> Rat {
        -a.clone()
    }
    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        a + b
    }
    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        a * b
    }
    fn exact_div(&self, a: &Rat, b: &Rat) -> Option<Rat> {
        if b.is_zero() {
            None
        } else {
            Some(a / b)
        }
    }
    fn from_rat(&self, q: &Rat) -> Rat {
        q.clone()
    }
    fn fmt_elem(&self, a: &Rat) -> String {
        fmt_rat(a)
    }
}

impl Field for Rationals {
    fn inv(&self, a: &Rat) -> Rat {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn to_rat(&self, a: &Rat) -> Option<Rat> {
        Some(a.clone())
    }
}

/// Integer gcd of the numerators over the lcm structure: the positive rational
/// c such that p/c has coprime integer coefficients, for p given by its
/// coefficient list.
pub fn rational_content<'a, I: Iterator<Item = &'a Rat>>(coeffs: I) -> Rat {
    use num_integer::Integer as _;
    let mut num_gcd = Int::zero();
    let mut den_lcm = Int::one();
    let mut seen = false;
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        seen = true;
        num_gcd = num_gcd.gcd(&c.numer().abs());
        den_lcm = den_lcm.lcm(c.denom());
    }
    if !seen {
        return Rat::one();
    }
    Rat::new(num_gcd, den_lcm)
}
