//! Newton-Puiseux branch decomposition of plane curve germs.
//!
//! Branches are parametrized in the standard frame x = u^e (exactly), with
//! the y-series living in a lazily built simple extension of Q. Vertical
//! branches (the line x = 0) swap variable roles. Conjugate branches over an
//! extension are materialized explicitly: a cluster found over a degree-d
//! root contributes d branches, which downstream counting (branch numbers,
//! intersection sums) needs individually.

use crate::error::{Error, Result};
use crate::localalg;
use crate::polycore::{
    adjoin_root, factor_over, substitute_series, FieldEmbedding, MPoly, NfElem, NumberField,
    Prec, Rat, Rationals, Ring, TruncSeries, UPoly,
};
use crate::polycore::ring::Field as _;
use crate::polycore::zfactor;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BranchKind {
    /// The line x = 0, parametrized (0, u).
    Vertical,
    /// Standard frame: x = u^ram exactly.
    Standard { ram: u32 },
}

/// One branch of a plane curve germ at the origin.
#[derive(Clone, Debug)]
pub struct PuiseuxBranch {
    pub field: NumberField,
    pub kind: BranchKind,
    pub x_series: TruncSeries<NumberField>,
    pub y_series: TruncSeries<NumberField>,
    /// Multiplicity of the branch: minimum order of the parametrization.
    pub multiplicity: u32,
    pub delta: u64,
    /// Projective tangent direction (x : y).
    pub tangent: (NfElem, NfElem),
    /// Number of Galois-conjugate branches sharing this presentation.
    pub cluster_size: u32,
    pub conjugate_index: u32,
}

impl PuiseuxBranch {
    pub fn ram(&self) -> u32 {
        match self.kind {
            BranchKind::Vertical => 1,
            BranchKind::Standard { ram } => ram,
        }
    }

    /// Order of x(u): the intersection multiplicity with the line x = 0.
    pub fn x_order(&self) -> Option<u32> {
        match self.kind {
            BranchKind::Vertical => None, // x identically zero
            BranchKind::Standard { ram } => Some(ram),
        }
    }

    /// Substitutes the parametrization into a rational polynomial.
    pub fn substitute(&self, p: &MPoly<Rationals>) -> TruncSeries<NumberField> {
        let pk = coerce_mpoly(p, &self.field);
        substitute_series(&pk, &[self.x_series.clone(), self.y_series.clone()])
    }

    /// Defining equation for graph-like and vertical branches.
    pub fn equation(&self, vars: &std::sync::Arc<Vec<String>>) -> Option<MPoly<Rationals>> {
        match self.kind {
            BranchKind::Vertical => Some(MPoly::var(&Rationals, vars, 0)),
            BranchKind::Standard { ram } => {
                if ram != 1 || self.y_series.prec != Prec::Exact || !self.field.is_rationals() {
                    return None;
                }
                // y = s(x): equation s(x) - y, normalized with positive lead
                let mut s = MPoly::var(&Rationals, vars, 1).neg();
                for (&k, c) in &self.y_series.terms {
                    let q = self.field.to_rat(c)?;
                    let mut e = crate::polycore::Expo::from_elem(0, vars.len());
                    e[0] = k as u16;
                    s.insert_term(e, q);
                }
                Some(s.normalized())
            }
        }
    }
}

pub fn coerce_mpoly(p: &MPoly<Rationals>, k: &NumberField) -> MPoly<NumberField> {
    p.map_coeffs(k, |c| k.from_rat(c))
}

fn embed_mpoly(p: &MPoly<NumberField>, emb: &FieldEmbedding) -> MPoly<NumberField> {
    p.map_coeffs(&emb.target, |c| emb.apply(c))
}

/// Raw expansion cluster in the local frame of one recursion level.
struct Cluster {
    field: NumberField,
    ram: u32,
    y: TruncSeries<NumberField>,
    conj: u32,
}

/// Branch decomposition of the germ of `{g = 0}` at the origin. `min_prec`
/// raises the working series precision beyond the internal default
/// max(2 mu + 2, 2 deg + 6).
pub fn branch_decomposition(g: &MPoly<Rationals>, min_prec: u32) -> Result<Vec<PuiseuxBranch>> {
    if g.is_zero() || !num_traits::Zero::is_zero(&g.constant_term()) {
        return Err(Error::Precondition("curve must pass through the origin".into()));
    }
    let (_, is_sf) = g.squarefree_part();
    if !is_sf {
        return Err(Error::Precondition("branch decomposition of a non-reduced curve".into()));
    }
    let mu = match localalg::milnor_number(g)? {
        localalg::Colength::Finite(m) => m,
        localalg::Colength::Infinite => {
            return Err(Error::Precondition(
                "branch decomposition requires a finite Milnor number".into(),
            ))
        }
    };
    let deg = g.total_degree().unwrap_or(0) as u64;
    let mut n = (2 * mu + 2).max(2 * deg + 6).max(min_prec as u64) as u32;
    for _ in 0..6 {
        match try_decomposition(g, n) {
            Err(Error::Truncation(_)) => n *= 2,
            other => return other,
        }
    }
    Err(Error::Truncation(n))
}

fn try_decomposition(g: &MPoly<Rationals>, n: u32) -> Result<Vec<PuiseuxBranch>> {
    let trivial = NumberField::rationals();
    let mut out: Vec<PuiseuxBranch> = Vec::new();
    // vertical factor
    let mut h = g.clone();
    let x = MPoly::var(&Rationals, &g.vars, 0);
    let mut vertical = 0u32;
    while let Some(q) = h.exact_div(&x) {
        vertical += 1;
        h = q;
    }
    if vertical > 1 {
        return Err(Error::Internal("repeated vertical component survived squarefree check".into()));
    }
    if vertical == 1 {
        out.push(PuiseuxBranch {
            field: trivial.clone(),
            kind: BranchKind::Vertical,
            x_series: TruncSeries::zero(&trivial, Prec::Exact),
            y_series: TruncSeries::param(&trivial),
            multiplicity: 1,
            delta: 0,
            tangent: (trivial.zero(), trivial.one()),
            cluster_size: 1,
            conjugate_index: 0,
        });
    }
    if !num_traits::Zero::is_zero(&h.constant_term()) {
        finish(g, out, n)
    } else {
        let hk = coerce_mpoly(&h, &trivial);
        let clusters = np_expand(&hk, &trivial, n, 0)?;
        for cl in clusters {
            out.extend(materialize(cl, n)?);
        }
        finish(g, out, n)
    }
}

fn finish(g: &MPoly<Rationals>, branches: Vec<PuiseuxBranch>, _n: u32) -> Result<Vec<PuiseuxBranch>> {
    // multiplicities add up to the multiplicity of the curve
    let total: u32 = branches.iter().map(|b| b.multiplicity).sum();
    let ord = g.order().unwrap_or(0);
    if total != ord {
        return Err(Error::Internal(format!(
            "branch multiplicities sum to {} but the curve has multiplicity {}",
            total, ord
        )));
    }
    // defining property: each parametrization annihilates g to precision
    for b in &branches {
        let s = b.substitute(g);
        if !s.terms.is_empty() {
            return Err(Error::Internal(
                "branch parametrization does not satisfy the curve equation".into(),
            ));
        }
    }
    Ok(branches)
}

fn materialize(cl: Cluster, n: u32) -> Result<Vec<PuiseuxBranch>> {
    let field = cl.field.clone();
    let e = cl.ram;
    let y_ord = match cl.y.order() {
        Ok(Some(k)) => Some(k),
        Ok(None) => None,
        Err(err) => return Err(err),
    };
    let multiplicity = match y_ord {
        Some(k) => e.min(k),
        None => e,
    };
    // primitivity: gcd of x-order and y-support must be one
    if e >= 2 {
        let mut gcd = e;
        for &k in cl.y.terms.keys() {
            gcd = gcd_u32(gcd, k);
        }
        if gcd != 1 {
            return Err(Error::Internal("non-primitive parametrization produced".into()));
        }
    }
    let delta = delta_from_support(e, &cl.y)?;
    let tangent = match y_ord {
        None => (field.one(), field.zero()),
        Some(k) => {
            if e < k {
                (field.one(), field.zero())
            } else if e == k {
                (field.one(), cl.y.coeff(k))
            } else {
                (field.zero(), field.one())
            }
        }
    };
    let x_series = TruncSeries::monomial(&field, field.one(), e, Prec::Exact);
    let y_series = if cl.y.prec == Prec::Exact {
        cl.y.clone()
    } else {
        cl.y.truncate_to(n.max(1))
    };
    let mut out = Vec::new();
    for idx in 0..cl.conj {
        out.push(PuiseuxBranch {
            field: field.clone(),
            kind: BranchKind::Standard { ram: e },
            x_series: x_series.clone(),
            y_series: y_series.clone(),
            multiplicity,
            delta,
            tangent: tangent.clone(),
            cluster_size: cl.conj,
            conjugate_index: idx,
        });
    }
    Ok(out)
}

fn gcd_u32(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd_u32(b, a % b)
    }
}

fn euler_phi(mut n: u32) -> u32 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Delta invariant of a branch in standard frame from the support of its
/// y-series: pairwise contact orders of the e Puiseux roots depend only on
/// which exponents carry nonzero coefficients.
fn delta_from_support(e: u32, y: &TruncSeries<NumberField>) -> Result<u64> {
    if e <= 1 {
        return Ok(0);
    }
    let mut sum: u64 = 0;
    let mut d = 2;
    while d <= e {
        if e % d == 0 {
            // minimal support exponent not divisible by d
            let m = y.terms.keys().find(|&&k| k % d != 0);
            let m = match m {
                Some(&k) => k,
                None => {
                    return Err(match y.prec {
                        Prec::Exact => Error::Internal(
                            "non-primitive series in delta computation".into(),
                        ),
                        Prec::Mod(p) => Error::Truncation(p),
                    })
                }
            };
            sum += euler_phi(d) as u64 * m as u64;
        }
        d += 1;
    }
    Ok((sum - (e as u64 - 1)) / 2)
}

/// Core Newton-Puiseux recursion on a polynomial with no x factor and
/// vanishing constant term, over an arbitrary base field.
fn np_expand(
    f: &MPoly<NumberField>,
    field: &NumberField,
    n: u32,
    depth: u32,
) -> Result<Vec<Cluster>> {
    if depth > 64 {
        return Err(Error::Internal("Newton-Puiseux recursion depth exceeded".into()));
    }
    let mut clusters: Vec<Cluster> = Vec::new();
    // y-coefficients a_j(x) and their x-orders
    let deg_y = f.degree_in(1).unwrap_or(0) as usize;
    let mut pts: Vec<(u32, u32)> = Vec::new(); // (j, v_j)
    for j in 0..=deg_y {
        let mut ord: Option<u32> = None;
        for (e, _) in &f.terms {
            if e[1] as usize == j {
                ord = Some(ord.map_or(e[0] as u32, |o: u32| o.min(e[0] as u32)));
            }
        }
        if let Some(v) = ord {
            pts.push((j as u32, v));
        }
    }
    assert!(!pts.is_empty());
    let j_min = pts[0].0;
    if j_min >= 1 {
        // y = 0 is a root of multiplicity j_min; a branch that terminates here
        if j_min > 1 {
            return Err(Error::Internal("repeated terminating branch: input not reduced".into()));
        }
        clusters.push(Cluster {
            field: field.clone(),
            ram: 1,
            y: TruncSeries::zero(field, Prec::Exact),
            conj: 1,
        });
    }
    // lower hull edges with negative slope
    for (a, b) in lower_hull_edges(&pts) {
        let (j1, v1) = a;
        let (j2, v2) = b;
        debug_assert!(j2 > j1 && v2 < v1);
        let dp = v1 - v2;
        let dq = j2 - j1;
        let gg = gcd_u32(dp, dq);
        let (p, q) = (dp / gg, dq / gg);
        // reduced edge polynomial in s = c^q
        let len = (j2 - j1) / q;
        let mut psi = vec![field.zero(); len as usize + 1];
        for i in 0..=len {
            let j = j1 + i * q;
            let v = v1 - i * p;
            let mut e = crate::polycore::Expo::from_elem(0, 2);
            e[0] = v as u16;
            e[1] = j as u16;
            if let Some(c) = f.terms.get(&e) {
                psi[i as usize] = c.clone();
            }
        }
        let psi = UPoly::from_coeffs(field, psi);
        debug_assert!(!field.is_zero(&psi.coeffs[0]));
        for (fac, mult) in factor_over(field, &psi) {
            let (k1, emb1, s_root) = adjoin_root(field, &fac)?;
            let conj_here = fac.deg() as u32;
            // adjoin c with c^q = s_root
            let (k2, emb2, c_root, emb_full) = if q == 1 {
                (k1.clone(), FieldEmbedding::identity(&k1), s_root.clone(), emb1.clone())
            } else {
                let mut root_poly = vec![k1.neg(&s_root)];
                root_poly.extend(std::iter::repeat(k1.zero()).take(q as usize - 1));
                root_poly.push(k1.one());
                let rp = UPoly::from_coeffs(&k1, root_poly);
                let factors = factor_over(&k1, &rp);
                let (k2, emb2, c_root) = adjoin_root(&k1, &factors[0].0)?;
                let emb_full = FieldEmbedding {
                    target: k2.clone(),
                    theta_image: emb2.apply(&emb1.theta_image),
                };
                (k2, emb2, c_root, emb_full)
            };
            let _ = emb2;
            let f2 = embed_mpoly(f, &emb_with_target(field, &emb_full, &k2));
            // transform: G(x, y) = f2(x^q, x^p (c + y)) / x^w
            let w = q * v1 + p * j1;
            let g2 = edge_transform(&f2, &k2, q, p, &c_root, w);
            if mult == 1 {
                // simple root: lift a plain power series by undetermined
                // coefficients
                let s = regular_lift(&g2, &k2, n)?;
                clusters.push(combine(field, q, p, &c_root, Cluster { field: k2, ram: 1, y: s, conj: 1 }, conj_here));
            } else {
                let subs = np_expand(&g2, &k2, n, depth + 1)?;
                for sub in subs {
                    let conj_total = conj_here * sub.conj;
                    clusters.push(combine(field, q, p, &c_root, sub, conj_total));
                }
            }
        }
    }
    Ok(clusters)
}

fn emb_with_target(
    _source: &NumberField,
    emb: &FieldEmbedding,
    target: &NumberField,
) -> FieldEmbedding {
    FieldEmbedding { target: target.clone(), theta_image: emb.theta_image.clone() }
}

/// Combines an inner cluster of the transformed curve with the outer edge
/// data: x = x1^q, y = x1^p (c + y1).
fn combine(
    _outer_field: &NumberField,
    q: u32,
    p: u32,
    c: &NfElem,
    inner: Cluster,
    conj: u32,
) -> Cluster {
    let field = inner.field.clone();
    let e = q * inner.ram;
    let shift = p * inner.ram;
    // y(u) = u^shift * (c + y1(u))
    let c_series = TruncSeries::monomial(&field, c.clone(), 0, Prec::Exact);
    let y = c_series.add(&inner.y).shift(shift);
    Cluster { field, ram: e, y, conj }
}

/// Power series solution of G(x, y(x)) = 0 with a simple root at y = 0.
fn regular_lift(g: &MPoly<NumberField>, field: &NumberField, n: u32) -> Result<TruncSeries<NumberField>> {
    let gy = g.derivative(1);
    let origin = [field.zero(), field.zero()];
    let gy0 = gy.eval_point(&origin);
    if field.is_zero(&gy0) {
        return Err(Error::Internal("regular lift at a non-simple root".into()));
    }
    let gy0_inv = field.inv(&gy0);
    let mut s = TruncSeries::zero(field, Prec::Mod(n));
    for k in 1..n {
        // coefficient of x^k in G(x, s)
        let gx = eval_partial(g, field, &s, k + 1);
        let e_k = gx.coeff(k);
        if field.is_zero(&e_k) {
            continue;
        }
        let d = field.neg(&field.mul(&e_k, &gy0_inv));
        let term = TruncSeries::monomial(field, d, k, Prec::Exact);
        s = s.add(&term).truncate_to(n);
        s.prec = Prec::Mod(n);
    }
    // terminating expansions are kept exact: when the partial sum is already
    // an honest polynomial root, composites along the branch stay exact too
    let mut exact = s.clone();
    exact.prec = Prec::Exact;
    let probe = substitute_series(g, &[TruncSeries::param(field), exact.clone()]);
    if probe.is_exactly_zero() {
        return Ok(exact);
    }
    Ok(s)
}

/// G(x, s(x)) truncated at order `bound`.
fn eval_partial(
    g: &MPoly<NumberField>,
    field: &NumberField,
    s: &TruncSeries<NumberField>,
    bound: u32,
) -> TruncSeries<NumberField> {
    let x = TruncSeries::param(field).truncate_to(bound);
    let y = s.truncate_to(bound);
    substitute_series(g, &[x, y])
}

/// f(x^q, x^p (c + y)) / x^w over the target field.
fn edge_transform(
    f: &MPoly<NumberField>,
    field: &NumberField,
    q: u32,
    p: u32,
    c: &NfElem,
    w: u32,
) -> MPoly<NumberField> {
    let vars = f.vars.clone();
    let mut out = MPoly::zero(field, &vars);
    // binomial expansion of (c + y)^b, cached by b
    let mut binom_cache: Vec<Vec<NfElem>> = vec![vec![field.one()]];
    for (e, coeff) in &f.terms {
        let a = e[0] as u32;
        let b = e[1] as u32;
        while binom_cache.len() <= b as usize {
            let prev = binom_cache.last().unwrap().clone();
            let mut next = vec![field.zero(); prev.len() + 1];
            for (i, t) in prev.iter().enumerate() {
                // multiply by (c + y)
                next[i] = field.add(&next[i], &field.mul(t, c));
                next[i + 1] = field.add(&next[i + 1], t);
            }
            binom_cache.push(next);
        }
        let expansion = &binom_cache[b as usize];
        let xdeg = q * a + p * b;
        debug_assert!(xdeg >= w);
        for (ypow, bc) in expansion.iter().enumerate() {
            let mut en = crate::polycore::Expo::from_elem(0, 2);
            en[0] = (xdeg - w) as u16;
            en[1] = ypow as u16;
            out.insert_term(en, field.mul(coeff, bc));
        }
    }
    out
}

fn lower_hull_edges(pts: &[(u32, u32)]) -> Vec<((u32, u32), (u32, u32))> {
    // pts sorted by j; lower convex hull, then keep strictly descending edges
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &(j, v) in pts {
        let pt = (j as i64, v as i64);
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            // remove b when it lies above segment a-pt
            let cross = (b.0 - a.0) * (pt.1 - a.1) - (b.1 - a.1) * (pt.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let mut edges = Vec::new();
    for w in hull.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b.1 < a.1 {
            edges.push(((a.0 as u32, a.1 as u32), (b.0 as u32, b.1 as u32)));
        }
    }
    edges
}

// ---------------------------------------------------------------------------
// Tangent cones.
// ---------------------------------------------------------------------------

/// A cluster of tangent directions of a curve germ.
#[derive(Clone, Debug, PartialEq)]
pub enum TangentDirection {
    /// The direction (0 : 1), the line x = 0.
    Vertical,
    /// Directions (1 : c) for the roots c of an irreducible rational
    /// polynomial (one direction per root; multiplicity collapsed).
    Slopes(UPoly<Rationals>),
}

/// Directions of the linear factors of the lowest homogeneous form.
pub fn tangent_directions(g: &MPoly<Rationals>) -> Result<Vec<TangentDirection>> {
    if g.is_zero() {
        return Err(Error::Precondition("tangent directions of the zero polynomial".into()));
    }
    if !num_traits::Zero::is_zero(&g.constant_term()) {
        return Err(Error::Precondition("curve must pass through the origin".into()));
    }
    let form = g.lowest_form();
    let mut out = Vec::new();
    // factor x^k out
    let mut c_poly = UPoly::zero();
    let mut saw_vertical = false;
    // substitute x = 1: polynomial in t = y with coefficients from the form
    let mut univ = vec![Rat::from_integer(0.into()); form.total_degree().unwrap_or(0) as usize + 1];
    for (e, c) in &form.terms {
        univ[e[1] as usize] = c.clone();
    }
    let univ = UPoly::from_coeffs(&Rationals, univ);
    // vertical factor present iff deg of the dehomogenized poly < total degree
    if univ.deg() < form.total_degree().unwrap_or(0) as usize {
        saw_vertical = true;
    }
    if saw_vertical {
        out.push(TangentDirection::Vertical);
    }
    c_poly = univ;
    if c_poly.deg() > 0 {
        let (_, factors) = zfactor::factor_q(&c_poly);
        for (f, _) in factors {
            out.push(TangentDirection::Slopes(f));
        }
    }
    Ok(out)
}

/// Whether two curves share a tangent direction: a common factor of the
/// lowest forms detects shared directions over the algebraic closure.
pub fn share_tangent_direction(g1: &MPoly<Rationals>, g2: &MPoly<Rationals>) -> bool {
    let f1 = g1.lowest_form();
    let f2 = g2.lowest_form();
    let g = crate::polycore::gcd_mv(&f1, &f2);
    !g.is_constant()
}

// ---------------------------------------------------------------------------
// Image parametrizations.
// ---------------------------------------------------------------------------

/// Image of a branch under a three-component map, with its covering degree.
#[derive(Clone, Debug)]
pub struct SpaceBranch {
    pub field: NumberField,
    /// Composite series (f1, f2, f3) along the branch parametrization.
    pub composite: [TruncSeries<NumberField>; 3],
    /// Primitive reparametrization of the image.
    pub primitive: [TruncSeries<NumberField>; 3],
    /// Degree of the covering u -> u^d realized by the composite.
    pub primitive_degree: u32,
    /// Multiplicity of the image branch: minimal order of the primitive
    /// parametrization.
    pub image_multiplicity: u32,
}

impl SpaceBranch {
    /// Tangent vector of the image branch.
    pub fn tangent_vector(&self) -> [NfElem; 3] {
        let m = self.image_multiplicity;
        [
            self.primitive[0].coeff(m),
            self.primitive[1].coeff(m),
            self.primitive[2].coeff(m),
        ]
    }
}

/// Composes the map with a branch parametrization and extracts the primitive
/// degree: the largest d such that the composite is a series in u^d,
/// verified by extraction and reconstitution.
pub fn image_parametrization(
    f: &[MPoly<Rationals>; 3],
    b: &PuiseuxBranch,
) -> Result<SpaceBranch> {
    let field = b.field.clone();
    let composite: Vec<TruncSeries<NumberField>> = f.iter().map(|fi| b.substitute(fi)).collect();
    // every coordinate must either be exactly zero or show its order
    let mut any_nonzero = false;
    let mut gcd_support: u32 = 0;
    for s in &composite {
        match s.order() {
            Ok(Some(_)) => {
                any_nonzero = true;
                for &k in s.terms.keys() {
                    gcd_support = gcd_u32(gcd_support, k);
                }
            }
            Ok(None) => {}
            Err(e) => return Err(e),
        }
    }
    if !any_nonzero {
        return Err(Error::Precondition(
            "map is not finite on the branch: composite vanishes identically".into(),
        ));
    }
    let mut d = gcd_support.max(1);
    // verify the candidate by extraction; fall back through the divisors
    let primitive = loop {
        let attempt: Option<Vec<TruncSeries<NumberField>>> =
            composite.iter().map(|s| s.extract_root(d)).collect();
        match attempt {
            Some(prim) => {
                let check: Vec<TruncSeries<NumberField>> =
                    prim.iter().map(|s| s.stretch(d)).collect();
                let ok = check
                    .iter()
                    .zip(composite.iter())
                    .all(|(a, b)| a.terms == b.terms);
                if ok {
                    break prim;
                }
            }
            None => {}
        }
        d -= 1;
        if d == 0 {
            return Err(Error::Internal("primitive degree extraction failed".into()));
        }
    };
    let image_multiplicity = primitive
        .iter()
        .filter_map(|s| s.order().ok().flatten())
        .min()
        .ok_or_else(|| Error::Internal("image multiplicity undefined".into()))?;
    let composite: [TruncSeries<NumberField>; 3] =
        composite.try_into().map_err(|_| Error::Internal("arity".into()))?;
    let primitive: [TruncSeries<NumberField>; 3] =
        primitive.try_into().map_err(|_| Error::Internal("arity".into()))?;
    Ok(SpaceBranch { field, composite, primitive, primitive_degree: d, image_multiplicity })
}

// ---------------------------------------------------------------------------
// Branch-data oracles for Milnor numbers and intersection multiplicities.
// ---------------------------------------------------------------------------

/// Milnor number through branch data: mu = 2 delta - r + 1 where delta
/// collects branch delta invariants and pairwise intersection numbers. The
/// pairwise sums come from the orders of the y-derivative along each branch,
/// which keeps every computation inside a single branch's coefficient field.
pub fn milnor_via_branches(g: &MPoly<Rationals>) -> Result<u64> {
    let mut min_prec = 0u32;
    for _ in 0..6 {
        match milnor_via_branches_at(g, min_prec) {
            Err(Error::Truncation(p)) => min_prec = (p * 2).max(32),
            other => return other,
        }
    }
    Err(Error::Truncation(min_prec))
}

fn milnor_via_branches_at(g: &MPoly<Rationals>, min_prec: u32) -> Result<u64> {
    let branches = branch_decomposition(g, min_prec)?;
    let x = MPoly::var(&Rationals, &g.vars, 0);
    let vertical = branches.iter().any(|b| b.kind == BranchKind::Vertical);
    let h = if vertical { g.exact_div(&x).unwrap() } else { g.clone() };
    let hy = h.derivative(1);
    let r = branches.len() as u64;
    let mut two_delta_plus: i64 = 0; // accumulates 2 * delta_total
    for b in &branches {
        if b.kind == BranchKind::Vertical {
            continue;
        }
        let e = b.ram() as i64;
        // vertical cross terms
        if vertical {
            two_delta_plus += 2 * e;
        }
        two_delta_plus += 2 * b.delta as i64;
        // sum of intersections with the other branches of h
        let ord = b
            .substitute(&hy)
            .order()?
            .ok_or_else(|| Error::Internal("derivative vanishes along a branch".into()))?;
        two_delta_plus += ord as i64 - 2 * b.delta as i64 - e + 1;
    }
    let two_delta = two_delta_plus as u64;
    Ok(two_delta + 1 - r)
}

/// Intersection multiplicity as the sum over the branches of one curve of
/// the order of the other curve's equation along the parametrization.
pub fn intersection_via_branches(g: &MPoly<Rationals>, h: &MPoly<Rationals>) -> Result<u64> {
    let mut min_prec = 0u32;
    for _ in 0..6 {
        let branches = branch_decomposition(g, min_prec)?;
        let mut total = 0u64;
        let mut fault = None;
        for b in &branches {
            match b.substitute(h).order() {
                Ok(Some(k)) => total += k as u64,
                Ok(None) => {
                    return Err(Error::Precondition(
                        "curves share a component through the origin".into(),
                    ))
                }
                Err(Error::Truncation(p)) => {
                    fault = Some(p);
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        match fault {
            Some(p) => min_prec = (p * 2).max(32),
            None => return Ok(total),
        }
    }
    Err(Error::Truncation(min_prec))
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

    #[test]
    fn c5_double_point_curve_branches() {
        // x y^2 - x^5 = x (y - x^2)(y + x^2)
        let branches = branch_decomposition(&p("x*y^2 - x^5"), 0).unwrap();
        assert_eq!(branches.len(), 3);
        let vertical: Vec<_> = branches.iter().filter(|b| b.kind == BranchKind::Vertical).collect();
        assert_eq!(vertical.len(), 1);
        let eqs: Vec<String> = branches
            .iter()
            .filter_map(|b| b.equation(&xy()))
            .map(|e| e.render())
            .collect();
        assert!(eqs.contains(&"x".to_string()));
        assert!(eqs.contains(&"x^2 - y".to_string()));
        assert!(eqs.contains(&"x^2 + y".to_string()));
        assert!(branches.iter().all(|b| b.delta == 0 && b.multiplicity == 1));
    }

    #[test]
    fn smooth_graph_branch() {
        let branches = branch_decomposition(&p("x + y^2"), 0).unwrap();
        assert_eq!(branches.len(), 1);
        let b = &branches[0];
        assert_eq!(b.kind, BranchKind::Standard { ram: 2 });
        assert_eq!(b.multiplicity, 1);
        assert_eq!(b.delta, 0);
        // x = u^2, y = c u with c^2 = -1... here x + y^2 = 0 forces y^2 = -x:
        // parametrized x = u^2 exactly needs y = a u with a^2 = -1
        assert_eq!(b.field.degree(), 2);
    }

    #[test]
    fn cusp_branch() {
        let branches = branch_decomposition(&p("x^2 - y^3"), 0).unwrap();
        assert_eq!(branches.len(), 1);
        let b = &branches[0];
        assert_eq!(b.multiplicity, 2);
        assert_eq!(b.delta, 1);
    }

    #[test]
    fn conjugate_pair_is_materialized() {
        // y^2 + x^2 = (y - ix)(y + ix)
        let branches = branch_decomposition(&p("y^2 + x^2"), 0).unwrap();
        assert_eq!(branches.len(), 2);
        assert_eq!(branches[0].cluster_size, 2);
        assert!(branches.iter().all(|b| b.multiplicity == 1));
    }

    #[test]
    fn quartic_extension_branch() {
        // x^3 + y^4: one branch, ramification 4 over a quartic extension
        let branches = branch_decomposition(&p("x^3 + y^4"), 0).unwrap();
        assert_eq!(branches.len(), 1);
        let b = &branches[0];
        assert_eq!(b.ram(), 4);
        assert_eq!(b.multiplicity, 3);
        assert_eq!(b.delta, 3);
        assert_eq!(b.field.degree(), 4);
    }

    #[test]
    fn tangent_cones() {
        let dirs = tangent_directions(&p("x*y^2 - x^5")).unwrap();
        assert_eq!(dirs.len(), 2); // x = 0 and y = 0 (collapsed multiplicity)
        assert!(dirs.contains(&TangentDirection::Vertical));
        let dirs = tangent_directions(&p("x + y^2")).unwrap();
        assert_eq!(dirs, vec![TangentDirection::Vertical]);
        let dirs = tangent_directions(&p("x^2 - y^2")).unwrap();
        assert_eq!(dirs.len(), 2);
        assert!(!dirs.contains(&TangentDirection::Vertical));
    }

    #[test]
    fn milnor_oracle_agrees_with_colength() {
        for src in [
            "x*y^2 - x^5",
            "x + y^2",
            "x^2 - y^3",
            "y^2 + x^2",
            "x^3 + y^4",
            "(x*y^2 - x^5)*(x + y^2)",
            "x*(y^2 - x^2)",
            "y^2 + x^7",
        ] {
            let g = p(src);
            let direct = localalg::milnor_number(&g).unwrap().finite().unwrap();
            let via = milnor_via_branches(&g).unwrap();
            assert_eq!(direct, via, "mu mismatch for {}", src);
        }
    }

    #[test]
    fn intersection_oracle_agrees_with_colength() {
        let pairs = [
            ("x", "y"),
            ("x^2 - y", "x^2 + y"),
            ("x*y^2 - x^5", "x + y^2"),
            ("x^2 - y^3", "x + y^2"),
            ("x^3 + y^4", "x - y^3"),
        ];
        for (a, b) in pairs {
            let ga = p(a);
            let gb = p(b);
            let direct = localalg::intersection_multiplicity(&ga, &gb)
                .unwrap()
                .finite()
                .unwrap();
            let via = intersection_via_branches(&ga, &gb).unwrap();
            assert_eq!(direct, via, "i mismatch for ({}, {})", a, b);
            let via_sym = intersection_via_branches(&gb, &ga).unwrap();
            assert_eq!(direct, via_sym, "i symmetry mismatch for ({}, {})", a, b);
        }
    }

    #[test]
    fn image_parametrization_fold_and_identification() {
        // cross-cap (x, y^2, x y), fold branch x = 0
        let v = xy();
        let f = [
            parse_poly("x", &v).unwrap(),
            parse_poly("y^2", &v).unwrap(),
            parse_poly("x*y", &v).unwrap(),
        ];
        let branches = branch_decomposition(&p("x"), 0).unwrap();
        assert_eq!(branches.len(), 1);
        let sb = image_parametrization(&f, &branches[0]).unwrap();
        assert_eq!(sb.primitive_degree, 2);
        assert_eq!(sb.image_multiplicity, 1);

        // identification branch (u, u^2) of the C5 germ maps primitively
        let f = [
            parse_poly("x", &v).unwrap(),
            parse_poly("y^2", &v).unwrap(),
            parse_poly("x*y^3 - x^5*y", &v).unwrap(),
        ];
        let branches = branch_decomposition(&p("x^2 - y"), 0).unwrap();
        let sb = image_parametrization(&f, &branches[0]).unwrap();
        assert_eq!(sb.primitive_degree, 1);
        assert_eq!(sb.image_multiplicity, 1);
    }
}
