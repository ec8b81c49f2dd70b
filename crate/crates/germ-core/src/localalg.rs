//! Local algebra at the origin of the plane: standard bases for the local
//! degree ordering via Mora's normal form, colengths of zero-dimensional
//! ideals in the local ring, Milnor numbers and intersection multiplicities
//! of plane curve germs.

use crate::error::{Error, Result};
use crate::polycore::{cmp_expo, Expo, MPoly, MonomialOrder, Rationals};

const ORDER: MonomialOrder = MonomialOrder::AntiGradedLex;

/// An ideal in the local ring at the origin, given by polynomial generators.
#[derive(Clone, Debug)]
pub struct LocalIdeal {
    pub gens: Vec<MPoly<Rationals>>,
    /// Set when a generator is a unit at the origin: the ideal is the whole
    /// ring.
    pub whole_ring: bool,
}

impl LocalIdeal {
    pub fn new(gens: Vec<MPoly<Rationals>>) -> Self {
        let gens: Vec<_> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        let whole_ring = gens
            .iter()
            .any(|g| !num_traits::Zero::is_zero(&g.constant_term()));
        LocalIdeal { gens, whole_ring }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Colength {
    Finite(u64),
    Infinite,
}

impl Colength {
    pub fn finite(&self) -> Option<u64> {
        match self {
            Colength::Finite(n) => Some(*n),
            Colength::Infinite => None,
        }
    }
    pub fn is_finite(&self) -> bool {
        matches!(self, Colength::Finite(_))
    }
}

#[derive(Clone, Debug)]
pub struct ColengthResult {
    pub value: Colength,
    /// Exponent vectors of the standard monomials, present when finite.
    pub standard_monomials: Option<Vec<Expo>>,
}

fn leading(p: &MPoly<Rationals>) -> (Expo, num_rational::BigRational) {
    p.leading_term(ORDER).expect("leading term of zero polynomial")
}

fn divides(a: &Expo, b: &Expo) -> bool {
    a.iter().zip(b.iter()).all(|(x, y)| x <= y)
}

fn ecart(p: &MPoly<Rationals>) -> u32 {
    let deg = p.total_degree().unwrap_or(0);
    let lm_deg = crate::polycore::mpoly::expo_total_deg(&leading(p).0);
    deg - lm_deg
}

/// Mora weak normal form with ecart-based reducer selection. Intermediate
/// results may join the reducer set; this is what makes the loop terminate
/// for local orderings.
fn mora_nf(f: &MPoly<Rationals>, basis: &[MPoly<Rationals>]) -> MPoly<Rationals> {
    let mut reducers: Vec<MPoly<Rationals>> = basis.to_vec();
    let mut h = f.clone();
    loop {
        if h.is_zero() {
            return h;
        }
        let (lm_h, lc_h) = leading(&h);
        let mut best: Option<usize> = None;
        for (i, g) in reducers.iter().enumerate() {
            let (lm_g, _) = leading(g);
            if divides(&lm_g, &lm_h) {
                if best.map_or(true, |b| ecart(g) < ecart(&reducers[b])) {
                    best = Some(i);
                }
            }
        }
        let Some(gi) = best else {
            return h;
        };
        let g = reducers[gi].clone();
        if ecart(&g) > ecart(&h) {
            reducers.push(h.clone());
        }
        let (lm_g, lc_g) = leading(&g);
        let mut quot = Expo::from_elem(0, lm_h.len());
        for i in 0..lm_h.len() {
            quot[i] = lm_h[i] - lm_g[i];
        }
        let c = lc_h / lc_g;
        h = h.sub(&g.mul_term(&quot, &c));
    }
}

fn spoly(f: &MPoly<Rationals>, g: &MPoly<Rationals>) -> MPoly<Rationals> {
    let (lm_f, lc_f) = leading(f);
    let (lm_g, lc_g) = leading(g);
    let n = lm_f.len();
    let mut lcm = Expo::from_elem(0, n);
    for i in 0..n {
        lcm[i] = lm_f[i].max(lm_g[i]);
    }
    let mut qf = Expo::from_elem(0, n);
    let mut qg = Expo::from_elem(0, n);
    for i in 0..n {
        qf[i] = lcm[i] - lm_f[i];
        qg[i] = lcm[i] - lm_g[i];
    }
    let one = num_traits::One::one();
    f.mul_term(&qf, &(&one / &lc_f)).sub(&g.mul_term(&qg, &(&one / &lc_g)))
}

/// Standard basis for the local degree ordering.
pub fn standard_basis(gens: &[MPoly<Rationals>]) -> Vec<MPoly<Rationals>> {
    let mut basis: Vec<MPoly<Rationals>> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.normalized())
        .collect();
    if basis.is_empty() {
        return basis;
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            pairs.push((i, j));
        }
    }
    while let Some((i, j)) = pairs.pop() {
        let (lm_i, _) = leading(&basis[i]);
        let (lm_j, _) = leading(&basis[j]);
        // product criterion: coprime leading monomials reduce to zero
        if lm_i.iter().zip(lm_j.iter()).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        let s = spoly(&basis[i], &basis[j]);
        let h = mora_nf(&s, &basis);
        if !h.is_zero() {
            let h = h.normalized();
            let new_idx = basis.len();
            for k in 0..new_idx {
                pairs.push((k, new_idx));
            }
            basis.push(h);
        }
    }
    basis
}

/// Minimal generators of the leading term ideal of the basis.
pub fn leading_monomials(basis: &[MPoly<Rationals>]) -> Vec<Expo> {
    let mut lms: Vec<Expo> = basis.iter().map(|g| leading(g).0).collect();
    lms.sort();
    lms.dedup();
    let mut minimal: Vec<Expo> = Vec::new();
    for m in &lms {
        if !lms.iter().any(|o| o != m && divides(o, m)) {
            minimal.push(m.clone());
        }
    }
    minimal
}

/// Dimension of the local ring modulo the ideal as a vector space: the
/// number of monomials outside the leading term ideal.
pub fn colength(ideal: &LocalIdeal) -> ColengthResult {
    if ideal.whole_ring {
        return ColengthResult { value: Colength::Finite(0), standard_monomials: Some(Vec::new()) };
    }
    if ideal.gens.is_empty() {
        return ColengthResult { value: Colength::Infinite, standard_monomials: None };
    }
    let arity = ideal.gens[0].arity();
    assert_eq!(arity, 2, "colength is implemented for the plane local ring");
    let basis = standard_basis(&ideal.gens);
    let lms = leading_monomials(&basis);
    // finite iff pure powers of both variables appear in the staircase
    let ax = lms.iter().filter(|e| e[1] == 0).map(|e| e[0]).min();
    let by = lms.iter().filter(|e| e[0] == 0).map(|e| e[1]).min();
    let (Some(ax), Some(by)) = (ax, by) else {
        return ColengthResult { value: Colength::Infinite, standard_monomials: None };
    };
    let mut std_monos: Vec<Expo> = Vec::new();
    for i in 0..ax {
        for j in 0..by {
            let e = Expo::from_slice(&[i, j]);
            if !lms.iter().any(|m| divides(m, &e)) {
                std_monos.push(e);
            }
        }
    }
    std_monos.sort_by(|a, b| cmp_expo(ORDER, b, a));
    ColengthResult { value: Colength::Finite(std_monos.len() as u64), standard_monomials: Some(std_monos) }
}

pub fn colength_of(gens: &[MPoly<Rationals>]) -> Colength {
    colength(&LocalIdeal::new(gens.to_vec())).value
}

/// Milnor number of the plane curve germ defined by `g`: the colength of the
/// Jacobian ideal at the origin.
pub fn milnor_number(g: &MPoly<Rationals>) -> Result<Colength> {
    if g.is_zero() {
        return Err(Error::Precondition("Milnor number of the zero polynomial".into()));
    }
    if !num_traits::Zero::is_zero(&g.constant_term()) {
        return Err(Error::Precondition(
            "Milnor number requested for a unit at the origin".into(),
        ));
    }
    Ok(colength_of(&[g.derivative(0), g.derivative(1)]))
}

/// Intersection multiplicity of two plane curve germs at the origin:
/// colength of the ideal generated by both equations. Infinite exactly when
/// they share a component through the origin.
pub fn intersection_multiplicity(
    g1: &MPoly<Rationals>,
    g2: &MPoly<Rationals>,
) -> Result<Colength> {
    if g1.is_zero() || g2.is_zero() {
        return Err(Error::Precondition("intersection with the zero curve".into()));
    }
    if !num_traits::Zero::is_zero(&g1.constant_term())
        || !num_traits::Zero::is_zero(&g2.constant_term())
    {
        return Err(Error::Precondition("curves must pass through the origin".into()));
    }
    let result = colength_of(&[g1.clone(), g2.clone()]);
    if let Colength::Finite(i) = result {
        // lower bound by the product of multiplicities, checked in test builds
        debug_assert!(
            i >= (g1.order().unwrap_or(0) as u64) * (g2.order().unwrap_or(0) as u64),
            "intersection multiplicity below multiplicity product"
        );
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{parse_poly, varset};
    use std::sync::Arc;

    fn xy() -> Arc<Vec<String>> {
        varset(&["x", "y"])
    }

    fn p(src: &str) -> MPoly<Rationals> {
        parse_poly(src, &xy()).unwrap()
    }

    fn mono(i: u16, j: u16) -> Expo {
        Expo::from_slice(&[i, j])
    }

    #[test]
    fn standard_basis_of_jacobian_of_c5_curve() {
        // (y^2 - 5x^4, 2xy): leading ideal must be (y^2, xy, x^5)
        let basis = standard_basis(&[p("y^2 - 5x^4"), p("2x*y")]);
        let lms = leading_monomials(&basis);
        assert_eq!(lms, vec![mono(0, 2), mono(1, 1), mono(5, 0)]);
    }

    #[test]
    fn standard_basis_trivial_cases() {
        let basis = standard_basis(&[p("x"), p("y")]);
        let lms = leading_monomials(&basis);
        assert_eq!(lms, vec![mono(0, 1), mono(1, 0)]);
        let basis = standard_basis(&[p("x + y^2")]);
        assert_eq!(basis.len(), 1);
    }

    #[test]
    fn colength_examples() {
        let r = colength(&LocalIdeal::new(vec![p("y^2 - 5x^4"), p("2x*y")]));
        assert_eq!(r.value, Colength::Finite(6));
        let monos = r.standard_monomials.unwrap();
        let expected: Vec<Expo> = vec![
            mono(0, 0),
            mono(1, 0),
            mono(0, 1),
            mono(2, 0),
            mono(3, 0),
            mono(4, 0),
        ];
        let mut got = monos.clone();
        got.sort();
        let mut want = expected.clone();
        want.sort();
        assert_eq!(got, want);

        assert_eq!(colength_of(&[p("x"), p("y")]), Colength::Finite(1));
        assert_eq!(colength_of(&[p("y^2")]), Colength::Infinite);
    }

    #[test]
    fn milnor_numbers() {
        assert_eq!(milnor_number(&p("x*y^2 - x^5")).unwrap(), Colength::Finite(6));
        assert_eq!(milnor_number(&p("x + y^2")).unwrap(), Colength::Finite(0));
        // (xy^2 - x^5)(x + y^2) has Milnor number 13 = 6 + 0 + 4*2 - 1
        let w = p("x*y^2 - x^5").mul(&p("x + y^2"));
        assert_eq!(milnor_number(&w).unwrap(), Colength::Finite(13));
        // non-isolated
        assert_eq!(milnor_number(&p("y^2")).unwrap(), Colength::Infinite);
        assert!(milnor_number(&p("1 + x")).is_err());
    }

    #[test]
    fn intersection_multiplicities() {
        assert_eq!(
            intersection_multiplicity(&p("x"), &p("y")).unwrap(),
            Colength::Finite(1)
        );
        assert_eq!(
            intersection_multiplicity(&p("x^2 - y"), &p("x^2 + y")).unwrap(),
            Colength::Finite(2)
        );
        assert_eq!(
            intersection_multiplicity(&p("x*y^2 - x^5"), &p("x + y^2")).unwrap(),
            Colength::Finite(4)
        );
        // shared component
        assert_eq!(
            intersection_multiplicity(&p("x*y"), &p("x*(x+y)")).unwrap(),
            Colength::Infinite
        );
    }

    #[test]
    fn whole_ring_short_circuit() {
        let ideal = LocalIdeal::new(vec![p("1 + x")]);
        assert!(ideal.whole_ring);
        assert_eq!(colength(&ideal).value, Colength::Finite(0));
    }
}
