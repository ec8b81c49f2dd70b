//! Simple algebraic extensions Q(a) with exact arithmetic.
//!
//! A field is presented by a monic irreducible minimal polynomial; elements
//! are residue classes represented by their coefficient vectors. Univariate
//! factorization over an extension reduces to rational factorization through
//! norms (resultants), which also drives root finding and the collapse of
//! towers into a single primitive extension.

use std::sync::Arc;

use num_traits::Signed;

use super::ring::{fmt_rat, Field, Rat, Rationals, Ring};
use super::upoly::{resultant, UPoly, UPolyRing};
use super::zfactor;
use crate::error::{Error, Result};

#[derive(Debug)]
struct Inner {
    /// Monic irreducible polynomial of the generator over Q.
    min_poly: UPoly<Rationals>,
}

/// A simple extension field Q(a), possibly trivial (degree 1).
#[derive(Clone, Debug)]
pub struct NumberField(Arc<Inner>);

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.min_poly == other.0.min_poly
    }
}

/// Element of a `NumberField`: coefficients of the residue class
/// representative, lowest degree first, trailing zeros trimmed.
pub type NfElem = Vec<Rat>;

impl NumberField {
    /// Builds Q[T]/(m). The minimal polynomial is normalized to be monic and
    /// verified squarefree and irreducible over Q.
    pub fn new(min_poly: &UPoly<Rationals>) -> Result<Self> {
        if min_poly.is_zero() || min_poly.deg() == 0 {
            return Err(Error::Internal("minimal polynomial must be nonconstant".into()));
        }
        let m = min_poly.monic(&Rationals);
        if m.deg() > 1 && !zfactor::is_irreducible_q(&m) {
            return Err(Error::Internal(format!(
                "minimal polynomial is reducible over Q: {:?}",
                m.coeffs
            )));
        }
        Ok(NumberField(Arc::new(Inner { min_poly: m })))
    }

    /// The trivial extension Q itself, presented by the polynomial T.
    pub fn rationals() -> Self {
        let m = UPoly::from_coeffs(&Rationals, vec![Rat::from_integer(0.into()), Rat::from_integer(1.into())]);
        NumberField(Arc::new(Inner { min_poly: m }))
    }

    pub fn degree(&self) -> usize {
        self.0.min_poly.deg()
    }

    pub fn is_rationals(&self) -> bool {
        self.degree() == 1
    }

    pub fn min_poly(&self) -> &UPoly<Rationals> {
        &self.0.min_poly
    }

    /// The generator a (zero in the trivial field).
    pub fn generator(&self) -> NfElem {
        if self.is_rationals() {
            let c = Rationals.neg(&self.0.min_poly.coeffs[0]);
            if Rationals.is_zero(&c) {
                vec![]
            } else {
                vec![c]
            }
        } else {
            vec![Rat::from_integer(0.into()), Rat::from_integer(1.into())]
        }
    }

    pub fn elem_to_upoly(&self, e: &NfElem) -> UPoly<Rationals> {
        UPoly::from_coeffs(&Rationals, e.clone())
    }

    pub fn reduce_upoly(&self, p: &UPoly<Rationals>) -> NfElem {
        let r = p.rem(&Rationals, &self.0.min_poly);
        r.coeffs
    }
}

impl Ring for NumberField {
    type Elem = NfElem;

    fn zero(&self) -> NfElem {
        vec![]
    }
    fn one(&self) -> NfElem {
        vec![Rat::from_integer(1.into())]
    }
    fn is_zero(&self, a: &NfElem) -> bool {
        a.is_empty()
    }
    fn neg(&self, a: &NfElem) -> NfElem {
        a.iter().map(|c| -c.clone()).collect()
    }
    fn add(&self, a: &NfElem, b: &NfElem) -> NfElem {
        let pa = self.elem_to_upoly(a);
        let pb = self.elem_to_upoly(b);
        pa.add(&Rationals, &pb).coeffs
    }
    fn mul(&self, a: &NfElem, b: &NfElem) -> NfElem {
        let pa = self.elem_to_upoly(a);
        let pb = self.elem_to_upoly(b);
        self.reduce_upoly(&pa.mul(&Rationals, &pb))
    }
    fn exact_div(&self, a: &NfElem, b: &NfElem) -> Option<NfElem> {
        if self.is_zero(b) {
            None
        } else {
            Some(self.mul(a, &self.inv(b)))
        }
    }
    fn from_rat(&self, q: &Rat) -> NfElem {
        if Rationals.is_zero(q) {
            vec![]
        } else {
            vec![q.clone()]
        }
    }
    fn fmt_elem(&self, a: &NfElem) -> String {
        fmt_nf_elem(a)
    }
}

impl Field for NumberField {
    fn inv(&self, a: &NfElem) -> NfElem {
        assert!(!self.is_zero(a), "inverse of zero in number field");
        let pa = self.elem_to_upoly(a);
        let (g, s, _) = pa.xgcd(&Rationals, &self.0.min_poly);
        assert!(
            g.deg() == 0,
            "element not invertible: minimal polynomial not irreducible?"
        );
        self.reduce_upoly(&s)
    }
    fn to_rat(&self, a: &NfElem) -> Option<Rat> {
        match a.len() {
            0 => Some(Rat::from_integer(0.into())),
            1 => Some(a[0].clone()),
            _ => None,
        }
    }
}

fn fmt_nf_elem(a: &NfElem) -> String {
    if a.is_empty() {
        return "0".into();
    }
    let mut parts: Vec<String> = Vec::new();
    for (i, c) in a.iter().enumerate().rev() {
        if num_traits::Zero::is_zero(c) {
            continue;
        }
        let var = match i {
            0 => String::new(),
            1 => "a".into(),
            _ => format!("a^{}", i),
        };
        let body = if var.is_empty() {
            fmt_rat(&c.abs())
        } else if c.abs() == Rat::from_integer(1.into()) {
            var
        } else {
            format!("{}*{}", fmt_rat(&c.abs()), var)
        };
        if parts.is_empty() {
            if *c < Rat::from_integer(0.into()) {
                parts.push(format!("-{}", body));
            } else {
                parts.push(body);
            }
        } else if *c < Rat::from_integer(0.into()) {
            parts.push(format!("- {}", body));
        } else {
            parts.push(format!("+ {}", body));
        }
    }
    parts.join(" ")
}

/// An embedding of one number field into another, determined by the image of
/// the generator.
#[derive(Clone, Debug)]
pub struct FieldEmbedding {
    pub target: NumberField,
    pub theta_image: NfElem,
}

impl FieldEmbedding {
    pub fn identity(field: &NumberField) -> Self {
        FieldEmbedding { target: field.clone(), theta_image: field.generator() }
    }

    pub fn apply(&self, e: &NfElem) -> NfElem {
        let mut acc = self.target.zero();
        for c in e.iter().rev() {
            acc = self.target.mul(&acc, &self.theta_image);
            acc = self.target.add(&acc, &self.target.from_rat(c));
        }
        acc
    }

    pub fn apply_poly(&self, p: &UPoly<NumberField>) -> UPoly<NumberField> {
        p.map_coeffs(&self.target, |c| self.apply(c))
    }
}

/// Norm of `f` with its generator replaced by the indeterminate z and T
/// shifted by `-k z`: `Res_z(m(z), f(T - k z))`, a polynomial over Q.
fn shifted_norm(field: &NumberField, f: &UPoly<NumberField>, k: i64) -> UPoly<Rationals> {
    // Outer variable: z (resultant variable). Coefficients: Q[T].
    type Biv = UPoly<UPolyRing<Rationals>>;
    let z_ring: UPolyRing<Rationals> = UPolyRing { base: Rationals };
    // T - k z as a polynomial in z with Q[T] coefficients
    let t_poly = UPoly::var(&Rationals); // T
    let shift: Biv = UPoly::from_coeffs(
        &z_ring,
        vec![t_poly, UPoly::constant(&Rationals, Rationals.from_i64(-k))],
    );
    let mut g: Biv = UPoly::zero();
    for (i, c) in f.coeffs.iter().enumerate() {
        let rep = field.elem_to_upoly(c);
        // rep(z) as z-polynomial with constant T-coefficients
        let rep_z: Biv = UPoly::from_coeffs(
            &z_ring,
            rep.coeffs
                .iter()
                .map(|q| UPoly::constant(&Rationals, q.clone()))
                .collect(),
        );
        let pow = shift.pow_n(&z_ring, i);
        g = g.add(&z_ring, &rep_z.mul(&z_ring, &pow));
    }
    let m_z: Biv = field
        .min_poly()
        .map_coeffs(&z_ring, |q| UPoly::constant(&Rationals, q.clone()));
    resultant(&z_ring, &m_z, &g)
}

/// Factorization over a number field (Trager's method). Returns monic
/// irreducible factors with multiplicities.
pub fn factor_over(field: &NumberField, f: &UPoly<NumberField>) -> Vec<(UPoly<NumberField>, usize)> {
    assert!(!f.is_zero());
    if f.deg() == 0 {
        return Vec::new();
    }
    if field.is_rationals() {
        let fq = f.map_coeffs(&Rationals, |c| field.to_rat(c).expect("rational element"));
        let (_, factors) = zfactor::factor_q(&fq);
        return factors
            .into_iter()
            .map(|(g, m)| (g.map_coeffs(field, |c| field.from_rat(c)), m))
            .collect();
    }
    let mut out: Vec<(UPoly<NumberField>, usize)> = Vec::new();
    for (g, mult) in f.squarefree_decomposition(field) {
        for irr in trager_squarefree(field, &g) {
            out.push((irr, mult));
        }
    }
    out.sort_by_key(|(g, _)| g.deg());
    out
}

fn trager_squarefree(field: &NumberField, g: &UPoly<NumberField>) -> Vec<UPoly<NumberField>> {
    if g.deg() <= 1 {
        return vec![g.monic(field)];
    }
    for k in shift_candidates() {
        let norm = shifted_norm(field, g, k);
        if norm.is_zero() {
            continue;
        }
        let sf = norm.gcd(&Rationals, &norm.derivative(&Rationals));
        if sf.deg() != 0 {
            continue; // norm not squarefree; try another shift
        }
        let (_, nf) = zfactor::factor_q(&norm);
        if nf.len() == 1 {
            return vec![g.monic(field)];
        }
        let mut pieces = Vec::new();
        let mut remaining = g.monic(field);
        for (nj, _) in &nf {
            // N_j(T + k*theta) over the field
            let njf = nj.map_coeffs(field, |c| field.from_rat(c));
            let shift = UPoly::from_coeffs(
                field,
                vec![
                    field.mul(&field.from_i64(k), &field.generator()),
                    field.one(),
                ],
            );
            let njs = njf.compose(field, &shift);
            let piece = remaining.gcd(field, &njs);
            if piece.degree().map_or(false, |d| d >= 1) {
                remaining = remaining.exact_div_poly(field, &piece).expect("factor division");
                pieces.push(piece);
            }
        }
        assert!(
            remaining.deg() == 0,
            "Trager factorization did not exhaust the polynomial"
        );
        return pieces;
    }
    unreachable!("no squarefree norm found");
}

fn shift_candidates() -> impl Iterator<Item = i64> {
    (0..64).map(|i| {
        let k = (i / 2 + i % 2) as i64;
        if i % 2 == 1 {
            k
        } else {
            -k
        }
    })
}

/// Roots of `f` lying in the field itself.
pub fn roots_in_field(field: &NumberField, f: &UPoly<NumberField>) -> Vec<NfElem> {
    if f.is_zero() || f.deg() == 0 {
        return Vec::new();
    }
    factor_over(field, f)
        .into_iter()
        .filter(|(g, _)| g.deg() == 1)
        .map(|(g, _)| field.neg(&g.coeffs[0]))
        .collect()
}

/// Adjoins a root of an irreducible polynomial, collapsing the tower into a
/// single primitive extension. Returns the new field, the embedding of the
/// base field, and the adjoined root inside the new field.
pub fn adjoin_root(
    field: &NumberField,
    s: &UPoly<NumberField>,
) -> Result<(NumberField, FieldEmbedding, NfElem)> {
    let s = s.monic(field);
    if s.deg() == 1 {
        let root = field.neg(&s.coeffs[0]);
        return Ok((field.clone(), FieldEmbedding::identity(field), root));
    }
    if field.is_rationals() {
        let sq = s.map_coeffs(&Rationals, |c| field.to_rat(c).expect("rational element"));
        let new_field = NumberField::new(&sq)?;
        let emb = FieldEmbedding {
            target: new_field.clone(),
            theta_image: new_field.from_rat(&field.to_rat(&field.generator()).unwrap()),
        };
        let root = new_field.generator();
        return Ok((new_field, emb, root));
    }
    // primitive element gamma = beta + k*theta for a shift making the norm
    // squarefree (hence irreducible of full degree)
    for k in shift_candidates() {
        if k == 0 {
            continue;
        }
        let norm = shifted_norm(field, &s, k);
        if norm.is_zero() {
            continue;
        }
        let expected = field.degree() * s.deg();
        if norm.deg() != expected {
            continue;
        }
        if !zfactor::is_irreducible_q(&norm) {
            continue;
        }
        let new_field = NumberField::new(&norm)?;
        // locate theta inside the new field
        let m_new = field
            .min_poly()
            .map_coeffs(&new_field, |c| new_field.from_rat(c));
        for theta_img in roots_in_field(&new_field, &m_new) {
            let emb = FieldEmbedding { target: new_field.clone(), theta_image: theta_img.clone() };
            let s_new = s.map_coeffs(&new_field, |c| emb.apply(c));
            // candidate root: gamma - k*theta
            let gamma = new_field.generator();
            let root = new_field.sub(
                &gamma,
                &new_field.mul(&new_field.from_i64(k), &theta_img),
            );
            if new_field.is_zero(&s_new.eval(&new_field, &root)) {
                return Ok((new_field, emb, root));
            }
        }
    }
    Err(Error::Internal("failed to construct primitive extension".into()))
}

#[cfg(test)]
mod tests {
    use super::super::ring::rat;
    use super::*;

    fn qp(cs: &[i64]) -> UPoly<Rationals> {
        UPoly::from_coeffs(&Rationals, cs.iter().map(|&c| rat(c)).collect())
    }

    fn gaussian() -> NumberField {
        NumberField::new(&qp(&[1, 0, 1])).unwrap() // a^2 + 1
    }

    #[test]
    fn arithmetic_in_gaussian_field() {
        let k = gaussian();
        let i = k.generator();
        let i2 = k.mul(&i, &i);
        assert_eq!(i2, k.from_i64(-1));
        let inv = k.inv(&i);
        assert_eq!(k.mul(&i, &inv), k.one());
        assert_eq!(inv, k.neg(&i));
    }

    #[test]
    fn rejects_reducible_minimal_polynomial() {
        assert!(NumberField::new(&qp(&[-1, 0, 1])).is_err()); // a^2 - 1
        assert!(NumberField::new(&qp(&[4, 0, 0, 0, 1])).is_err()); // a^4 + 4
    }

    #[test]
    fn factor_splits_over_extension() {
        let k = gaussian();
        // T^2 + 1 = (T - a)(T + a) over Q(a), a^2 = -1
        let f = qp(&[1, 0, 1]).map_coeffs(&k, |c| k.from_rat(c));
        let factors = factor_over(&k, &f);
        assert_eq!(factors.len(), 2);
        assert!(factors.iter().all(|(g, m)| g.deg() == 1 && *m == 1));
        let roots = roots_in_field(&k, &f);
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&k.generator()));
    }

    #[test]
    fn factor_stays_irreducible() {
        let k = gaussian();
        // T^2 - 2 stays irreducible over Q(i)
        let f = qp(&[-2, 0, 1]).map_coeffs(&k, |c| k.from_rat(c));
        let factors = factor_over(&k, &f);
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0].0.deg(), 2);
    }

    #[test]
    fn adjoin_collapses_tower() {
        let k = gaussian();
        // adjoin sqrt(2) on top of Q(i): degree 4 primitive extension
        let f = qp(&[-2, 0, 1]).map_coeffs(&k, |c| k.from_rat(c));
        let (l, emb, root) = adjoin_root(&k, &f).unwrap();
        assert_eq!(l.degree(), 4);
        // root^2 = 2
        assert_eq!(l.mul(&root, &root), l.from_i64(2));
        // embedded i still squares to -1
        let i_img = emb.apply(&k.generator());
        assert_eq!(l.mul(&i_img, &i_img), l.from_i64(-1));
    }

    #[test]
    fn cube_root_of_unity_field() {
        // a^2 + a + 1
        let k = NumberField::new(&qp(&[1, 1, 1])).unwrap();
        let w = k.generator();
        let w3 = k.pow(&w, 3);
        assert_eq!(w3, k.one());
        // T^3 - 1 factors as (T-1)(T-w)(T-w^2) over this field
        let f = qp(&[-1, 0, 0, 1]).map_coeffs(&k, |c| k.from_rat(c));
        let roots = roots_in_field(&k, &f);
        assert_eq!(roots.len(), 3);
    }
}
