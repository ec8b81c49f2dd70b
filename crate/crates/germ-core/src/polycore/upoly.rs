//! Dense univariate polynomials over an arbitrary coefficient ring.
//!
//! Used for elimination (subresultant PRS), number field arithmetic and the
//! rational factorization engine. The coefficient ring is passed explicitly
//! to every operation.

use super::ring::{Field, Ring};

#[derive(Clone, PartialEq, Debug)]
pub struct UPoly<R: Ring> {
    /// `coeffs[i]` is the coefficient of `T^i`; the last entry is nonzero.
    pub coeffs: Vec<R::Elem>,
}

impl<R: Ring> UPoly<R> {
    pub fn from_coeffs(ring: &R, mut coeffs: Vec<R::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| ring.is_zero(c)) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn constant(ring: &R, c: R::Elem) -> Self {
        Self::from_coeffs(ring, vec![c])
    }

    pub fn monomial(ring: &R, c: R::Elem, k: usize) -> Self {
        let mut coeffs = vec![ring.zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(ring, coeffs)
    }

    pub fn var(ring: &R) -> Self {
        Self::monomial(ring, ring.one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial yields `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn lc<'a>(&'a self) -> &'a R::Elem {
        self.coeffs.last().expect("lc of zero polynomial")
    }

    pub fn coeff(&self, ring: &R, k: usize) -> R::Elem {
        self.coeffs.get(k).cloned().unwrap_or_else(|| ring.zero())
    }

    pub fn add(&self, ring: &R, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(ring.add(&self.coeff(ring, i), &other.coeff(ring, i)));
        }
        Self::from_coeffs(ring, out)
    }

    pub fn neg(&self, ring: &R) -> Self {
        UPoly { coeffs: self.coeffs.iter().map(|c| ring.neg(c)).collect() }
    }

    pub fn sub(&self, ring: &R, other: &Self) -> Self {
        self.add(ring, &other.neg(ring))
    }

    pub fn mul(&self, ring: &R, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![ring.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if ring.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = ring.add(&out[i + j], &ring.mul(a, b));
            }
        }
        Self::from_coeffs(ring, out)
    }

    pub fn scale(&self, ring: &R, c: &R::Elem) -> Self {
        Self::from_coeffs(ring, self.coeffs.iter().map(|a| ring.mul(a, c)).collect())
    }

    /// Multiplication by `T^k`.
    pub fn shift(&self, ring: &R, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![ring.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UPoly { coeffs }
    }

    pub fn eval(&self, ring: &R, x: &R::Elem) -> R::Elem {
        let mut acc = ring.zero();
        for c in self.coeffs.iter().rev() {
            acc = ring.add(&ring.mul(&acc, x), c);
        }
        acc
    }

    pub fn derivative(&self, ring: &R) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| ring.mul(c, &ring.from_i64(i as i64)))
            .collect();
        Self::from_coeffs(ring, out)
    }

    pub fn pow_n(&self, ring: &R, n: usize) -> Self {
        let mut acc = Self::constant(ring, ring.one());
        for _ in 0..n {
            acc = acc.mul(ring, self);
        }
        acc
    }

    /// Substitution `T -> inner(T)`.
    pub fn compose(&self, ring: &R, inner: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(ring, inner).add(ring, &Self::constant(ring, c.clone()));
        }
        acc
    }

    pub fn map_coeffs<S: Ring>(&self, target: &S, f: impl Fn(&R::Elem) -> S::Elem) -> UPoly<S> {
        UPoly::from_coeffs(target, self.coeffs.iter().map(f).collect())
    }

    /// Pseudo-division: returns (q, r) with `lc(d)^(deg n - deg d + 1) * n = q*d + r`.
    pub fn pseudo_divrem(&self, ring: &R, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "pseudo-division by zero");
        let dd = d.deg();
        if self.is_zero() || self.deg() < dd {
            let e = self.coeffs.len().saturating_sub(dd) + 1;
            let lc_pow = ring.pow(d.lc(), e);
            return (Self::zero(), self.scale(ring, &lc_pow));
        }
        let mut r = self.clone();
        let mut q = Self::zero();
        let steps = self.deg() - dd + 1;
        let mut count = 0usize;
        while !r.is_zero() && r.deg() >= dd {
            let k = r.deg() - dd;
            let t = Self::monomial(ring, r.lc().clone(), k);
            q = q.scale(ring, d.lc()).add(ring, &t);
            r = r.scale(ring, d.lc()).sub(ring, &t.mul(ring, d));
            count += 1;
        }
        // pad so that the exponent of lc(d) is uniform
        for _ in count..steps {
            q = q.scale(ring, d.lc());
            r = r.scale(ring, d.lc());
        }
        (q, r)
    }
}

impl<F: Field> UPoly<F> {
    pub fn divrem(&self, field: &F, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.deg();
        let lc_inv = field.inv(d.lc());
        let mut r = self.clone();
        let mut q = Self::zero();
        while !r.is_zero() && r.deg() >= dd {
            let k = r.deg() - dd;
            let c = field.mul(r.lc(), &lc_inv);
            let t = Self::monomial(field, c, k);
            q = q.add(field, &t);
            r = r.sub(field, &t.mul(field, d));
        }
        (q, r)
    }

    pub fn rem(&self, field: &F, d: &Self) -> Self {
        self.divrem(field, d).1
    }

    pub fn monic(&self, field: &F) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = field.inv(self.lc());
        self.scale(field, &inv)
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, field: &F, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(field, &b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic(field)
        }
    }

    /// Extended Euclid: returns (g, s, t) with `s*a + t*b = g`, g monic or zero.
    pub fn xgcd(&self, field: &F, other: &Self) -> (Self, Self, Self) {
        let one = Self::constant(field, field.one());
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (one.clone(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), one);
        while !r1.is_zero() {
            let (q, r) = r0.divrem(field, &r1);
            let s = s0.sub(field, &q.mul(field, &s1));
            let t = t0.sub(field, &q.mul(field, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = field.inv(r0.lc());
        (
            r0.scale(field, &inv),
            s0.scale(field, &inv),
            t0.scale(field, &inv),
        )
    }

    /// Squarefree part (char 0): `self / gcd(self, self')`, made monic.
    pub fn squarefree_part(&self, field: &F) -> Self {
        let g = self.gcd(field, &self.derivative(field));
        if g.degree() == Some(0) {
            return self.monic(field);
        }
        self.divrem(field, &g).0.monic(field)
    }

    /// Yun's squarefree decomposition: returns `[(g_i, i)]` with
    /// `self = lc * prod g_i^i`, all `g_i` monic squarefree and pairwise coprime.
    pub fn squarefree_decomposition(&self, field: &F) -> Vec<(Self, usize)> {
        assert!(!self.is_zero());
        let f = self.monic(field);
        if f.deg() == 0 {
            return Vec::new();
        }
        let df = f.derivative(field);
        let a0 = f.gcd(field, &df);
        if a0.deg() == 0 {
            return vec![(f, 1)];
        }
        let mut out = Vec::new();
        let mut b = f.divrem(field, &a0).0;
        let mut c = df.divrem(field, &a0).0;
        let mut d = c.sub(field, &b.derivative(field));
        let mut i = 1usize;
        while b.deg() > 0 {
            let a = b.gcd(field, &d);
            if a.deg() > 0 {
                out.push((a.clone(), i));
            }
            b = b.divrem(field, &a).0;
            c = d.divrem(field, &a).0;
            d = c.sub(field, &b.derivative(field));
            i += 1;
        }
        out
    }

    /// Exact division for field coefficients; `None` when remainder is nonzero.
    pub fn exact_div_poly(&self, field: &F, d: &Self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (q, r) = self.divrem(field, d);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }
}

/// Resultant of `p` and `q` via the subresultant polynomial remainder
/// sequence. Exact over any integral coefficient ring; avoids the coefficient
/// blowup of a direct Sylvester determinant expansion.
pub fn resultant<R: Ring>(ring: &R, p: &UPoly<R>, q: &UPoly<R>) -> R::Elem {
    if p.is_zero() || q.is_zero() {
        return ring.zero();
    }
    let (mut a, mut b, mut neg) = if p.deg() >= q.deg() {
        (p.clone(), q.clone(), false)
    } else {
        (q.clone(), p.clone(), (p.deg() * q.deg()) % 2 == 1)
    };
    if b.deg() == 0 {
        let r = ring.pow(b.lc(), a.deg());
        return if neg { ring.neg(&r) } else { r };
    }
    let mut g = ring.one();
    let mut h = ring.one();
    loop {
        let (da, db) = (a.deg(), b.deg());
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            neg = !neg;
        }
        let (_, r) = a.pseudo_divrem(ring, &b);
        a = b;
        let divisor = ring.mul(&g, &ring.pow(&h, delta));
        b = if r.is_zero() {
            UPoly::zero()
        } else {
            UPoly::from_coeffs(
                ring,
                r.coeffs
                    .iter()
                    .map(|c| {
                        ring.exact_div(c, &divisor)
                            .expect("subresultant exact division failed")
                    })
                    .collect(),
            )
        };
        g = a.lc().clone();
        if delta > 0 {
            h = ring
                .exact_div(&ring.pow(&g, delta), &ring.pow(&h, delta - 1))
                .expect("subresultant exact division failed");
        }
        if b.is_zero() {
            return ring.zero();
        }
        if b.deg() == 0 {
            break;
        }
    }
    let da = a.deg();
    let num = ring.pow(b.lc(), da);
    let res = ring
        .exact_div(&num, &ring.pow(&h, da - 1))
        .expect("subresultant exact division failed");
    if neg {
        ring.neg(&res)
    } else {
        res
    }
}

/// Coefficient-ring wrapper turning `UPoly<F>` into a `Ring`, so that
/// bivariate resultants can be formed as univariate resultants over it.
#[derive(Clone, PartialEq, Debug)]
pub struct UPolyRing<F: Field> {
    pub base: F,
}

impl<F: Field> Ring for UPolyRing<F> {
    type Elem = UPoly<F>;

    fn zero(&self) -> UPoly<F> {
        UPoly::zero()
    }
    fn one(&self) -> UPoly<F> {
        UPoly::constant(&self.base, self.base.one())
    }
    fn is_zero(&self, a: &UPoly<F>) -> bool {
        a.is_zero()
    }
    fn neg(&self, a: &UPoly<F>) -> UPoly<F> {
        a.neg(&self.base)
    }
    fn add(&self, a: &UPoly<F>, b: &UPoly<F>) -> UPoly<F> {
        a.add(&self.base, b)
    }
    fn mul(&self, a: &UPoly<F>, b: &UPoly<F>) -> UPoly<F> {
        a.mul(&self.base, b)
    }
    fn exact_div(&self, a: &UPoly<F>, b: &UPoly<F>) -> Option<UPoly<F>> {
        if b.is_zero() {
            return None;
        }
        a.exact_div_poly(&self.base, b)
    }
    fn from_rat(&self, q: &super::ring::Rat) -> UPoly<F> {
        UPoly::constant(&self.base, self.base.from_rat(q))
    }
    fn fmt_elem(&self, a: &UPoly<F>) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let terms: Vec<String> = a
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.base.is_zero(c))
            .map(|(i, c)| format!("({})*T^{}", self.base.fmt_elem(c), i))
            .collect();
        terms.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::super::ring::{rat, Rationals};
    use super::*;

    fn qp(cs: &[i64]) -> UPoly<Rationals> {
        UPoly::from_coeffs(&Rationals, cs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn divrem_roundtrip() {
        let f = qp(&[2, 0, -3, 1]); // T^3 - 3T^2 + 2
        let d = qp(&[-1, 1]); // T - 1
        let (q, r) = f.divrem(&Rationals, &d);
        assert_eq!(q.mul(&Rationals, &d).add(&Rationals, &r), f);
        assert_eq!(r, qp(&[0]));
    }

    #[test]
    fn gcd_of_common_factor() {
        let a = qp(&[-1, 1]).mul(&Rationals, &qp(&[1, 1]));
        let b = qp(&[-1, 1]).mul(&Rationals, &qp(&[2, 1]));
        assert_eq!(a.gcd(&Rationals, &b), qp(&[-1, 1]));
    }

    #[test]
    fn resultant_matches_classics() {
        // res(T^2 - 1, T - 2) = (2)^2 - 1 = 3
        let r = resultant(&Rationals, &qp(&[-1, 0, 1]), &qp(&[-2, 1]));
        assert_eq!(r, rat(3));
        // common root => 0
        let r = resultant(&Rationals, &qp(&[-1, 0, 1]), &qp(&[-1, 1]));
        assert_eq!(r, rat(0));
        // res of quadratics: res(T^2+1, T^2-2) = 9
        let r = resultant(&Rationals, &qp(&[1, 0, 1]), &qp(&[-2, 0, 1]));
        assert_eq!(r, rat(9));
    }

    #[test]
    fn yun_decomposition() {
        // (T-1)^2 (T+2)
        let f = qp(&[-1, 1])
            .mul(&Rationals, &qp(&[-1, 1]))
            .mul(&Rationals, &qp(&[2, 1]));
        let d = f.squarefree_decomposition(&Rationals);
        assert_eq!(d.len(), 2);
        assert_eq!(d[0], (qp(&[2, 1]), 1));
        assert_eq!(d[1], (qp(&[-1, 1]), 2));
    }

    #[test]
    fn xgcd_bezout() {
        let a = qp(&[1, 0, 1]);
        let b = qp(&[-2, 0, 1]);
        let (g, s, t) = a.xgcd(&Rationals, &b);
        let lhs = s.mul(&Rationals, &a).add(&Rationals, &t.mul(&Rationals, &b));
        assert_eq!(lhs, g);
        assert_eq!(g.deg(), 0);
    }
}
