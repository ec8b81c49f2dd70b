//! Global Groebner bases over Q with block elimination orders.
//!
//! Used to eliminate the second copy of the source coordinates from the
//! lifting ideal of the double point space, as an independent route to the
//! double point curve.

use crate::polycore::{cmp_expo, Expo, MPoly, MonomialOrder, Rationals};

fn leading(p: &MPoly<Rationals>, order: MonomialOrder) -> (Expo, num_rational::BigRational) {
    p.leading_term(order).expect("leading term of zero polynomial")
}

fn divides(a: &Expo, b: &Expo) -> bool {
    a.iter().zip(b.iter()).all(|(x, y)| x <= y)
}

fn normal_form(
    f: &MPoly<Rationals>,
    basis: &[MPoly<Rationals>],
    order: MonomialOrder,
) -> MPoly<Rationals> {
    let mut rem = MPoly::zero(&f.field, &f.vars);
    let mut h = f.clone();
    'outer: while !h.is_zero() {
        let (lm_h, lc_h) = leading(&h, order);
        for g in basis {
            let (lm_g, lc_g) = leading(g, order);
            if divides(&lm_g, &lm_h) {
                let mut quot = Expo::from_elem(0, lm_h.len());
                for i in 0..lm_h.len() {
                    quot[i] = lm_h[i] - lm_g[i];
                }
                let c = &lc_h / &lc_g;
                h = h.sub(&g.mul_term(&quot, &c));
                continue 'outer;
            }
        }
        // move the irreducible leading term into the remainder
        let mut t = MPoly::zero(&f.field, &f.vars);
        t.insert_term(lm_h.clone(), lc_h.clone());
        rem = rem.add(&t);
        h = h.sub(&t);
    }
    rem
}

/// Buchberger's algorithm with the product criterion.
pub fn groebner_basis(gens: &[MPoly<Rationals>], order: MonomialOrder) -> Vec<MPoly<Rationals>> {
    let mut basis: Vec<MPoly<Rationals>> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.normalized())
        .collect();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            pairs.push((i, j));
        }
    }
    while let Some((i, j)) = pairs.pop() {
        let (lm_i, lc_i) = leading(&basis[i], order);
        let (lm_j, lc_j) = leading(&basis[j], order);
        if lm_i.iter().zip(lm_j.iter()).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        let n = lm_i.len();
        let mut qf = Expo::from_elem(0, n);
        let mut qg = Expo::from_elem(0, n);
        for k in 0..n {
            let l = lm_i[k].max(lm_j[k]);
            qf[k] = l - lm_i[k];
            qg[k] = l - lm_j[k];
        }
        let one: num_rational::BigRational = num_traits::One::one();
        let s = basis[i]
            .mul_term(&qf, &(&one / &lc_i))
            .sub(&basis[j].mul_term(&qg, &(&one / &lc_j)));
        let h = normal_form(&s, &basis, order);
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

/// Generators of the elimination ideal removing the first `k` variables.
pub fn eliminate(gens: &[MPoly<Rationals>], k: usize) -> Vec<MPoly<Rationals>> {
    let gb = groebner_basis(gens, MonomialOrder::Elim(k));
    gb.into_iter()
        .filter(|g| (0..k).all(|v| !g.involves(v)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{gcd_mv, parse_poly, varset};

    #[test]
    fn eliminate_parameter_from_parametrized_parabola() {
        // x = t, y = t^2 : eliminating t yields y - x^2
        let v = varset(&["t", "x", "y"]);
        let gens = vec![
            parse_poly("x - t", &v).unwrap(),
            parse_poly("y - t^2", &v).unwrap(),
        ];
        let elim = eliminate(&gens, 1);
        assert!(!elim.is_empty());
        let target = parse_poly("y - x^2", &v).unwrap().normalized();
        assert!(elim.iter().any(|g| g.normalized() == target));
    }

    #[test]
    fn elimination_ideal_gcd_gives_curve_part() {
        // circle intersected against shifted circle family
        let v = varset(&["u", "x", "y"]);
        let gens = vec![
            parse_poly("x - (u^2 - 1)", &v).unwrap(),
            parse_poly("y - u*(u^2 - 1)", &v).unwrap(),
        ];
        let elim = eliminate(&gens, 1);
        let mut g = MPoly::zero(&Rationals, &v);
        for e in &elim {
            g = gcd_mv(&g, e);
        }
        // nodal cubic y^2 = x^2 (x + 1)
        let target = parse_poly("y^2 - x^3 - x^2", &v).unwrap().normalized();
        assert_eq!(g.normalized(), target);
    }
}
