//! Univariate factorization over the rationals.
//!
//! Classical Zassenhaus pipeline: Yun squarefree decomposition, Berlekamp
//! factorization modulo a good small prime, quadratic Hensel lifting to a
//! modulus past the Mignotte bound, then subset recombination. This backs the
//! irreducibility certification of number field minimal polynomials and the
//! root adjunction steps of the Puiseux engine.

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::ring::{Int, Rat, Rationals, Ring};
use super::upoly::UPoly;

type ZPoly = Vec<Int>;

fn z_trim(mut v: ZPoly) -> ZPoly {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn z_deg(v: &ZPoly) -> usize {
    v.len() - 1
}

fn z_mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Int::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    z_trim(out)
}

fn z_content(a: &ZPoly) -> Int {
    let mut g = Int::zero();
    for c in a {
        g = g.gcd(c);
    }
    g
}

fn z_primitive(a: &ZPoly) -> ZPoly {
    let c = z_content(a);
    if c.is_zero() || c.is_one() {
        return a.clone();
    }
    a.iter().map(|x| x / &c).collect()
}

/// Exact polynomial division over Z; `None` when not divisible.
fn z_exact_div(n: &ZPoly, d: &ZPoly) -> Option<ZPoly> {
    if n.is_empty() {
        return Some(Vec::new());
    }
    if d.is_empty() || n.len() < d.len() {
        return None;
    }
    let mut rem = n.clone();
    let mut q = vec![Int::zero(); n.len() - d.len() + 1];
    let dl = d.last().unwrap();
    for k in (0..q.len()).rev() {
        let lead = rem[k + d.len() - 1].clone();
        if lead.is_zero() {
            continue;
        }
        let (c, r) = lead.div_rem(dl);
        if !r.is_zero() {
            return None;
        }
        q[k] = c.clone();
        for (i, dc) in d.iter().enumerate() {
            rem[k + i] -= &c * dc;
        }
    }
    if rem.iter().all(|c| c.is_zero()) {
        Some(z_trim(q))
    } else {
        None
    }
}

fn z_to_q(a: &ZPoly) -> UPoly<Rationals> {
    UPoly::from_coeffs(&Rationals, a.iter().map(|c| Rat::from_integer(c.clone())).collect())
}

/// Clears denominators and content: a primitive integer polynomial with
/// positive leading coefficient, equal to the input up to a rational unit.
fn q_to_primitive_z(p: &UPoly<Rationals>) -> ZPoly {
    assert!(!p.is_zero());
    let mut den = Int::one();
    for c in &p.coeffs {
        den = den.lcm(c.denom());
    }
    let ints: ZPoly = p.coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    let mut prim = z_primitive(&ints);
    if prim.last().unwrap().is_negative() {
        prim = prim.iter().map(|c| -c).collect();
    }
    prim
}

// ---------------------------------------------------------------------------
// Arithmetic modulo a small prime.
// ---------------------------------------------------------------------------

type FpPoly = Vec<u64>;

fn fp_trim(mut v: FpPoly) -> FpPoly {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn fp_mulc(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn fp_inv(a: u64, p: u64) -> u64 {
    // Fermat
    let mut r = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = fp_mulc(r, base, p);
        }
        base = fp_mulc(base, base, p);
        e >>= 1;
    }
    r
}

fn fp_mul(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + fp_mulc(x, y, p)) % p;
        }
    }
    fp_trim(out)
}

fn fp_sub(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out[i] = (x + p - y) % p;
    }
    fp_trim(out)
}

fn fp_divrem(a: &FpPoly, d: &FpPoly, p: u64) -> (FpPoly, FpPoly) {
    assert!(!d.is_empty());
    let mut r = a.clone();
    let dl_inv = fp_inv(*d.last().unwrap(), p);
    if r.len() < d.len() {
        return (Vec::new(), fp_trim(r));
    }
    let mut q = vec![0u64; r.len() - d.len() + 1];
    for k in (0..q.len()).rev() {
        let lead = r[k + d.len() - 1];
        if lead == 0 {
            continue;
        }
        let c = fp_mulc(lead, dl_inv, p);
        q[k] = c;
        for (i, &dc) in d.iter().enumerate() {
            r[k + i] = (r[k + i] + p - fp_mulc(c, dc, p)) % p;
        }
    }
    (fp_trim(q), fp_trim(r))
}

fn fp_gcd(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = fp_divrem(&a, &b, p).1;
        a = std::mem::replace(&mut b, r);
    }
    fp_monic(&a, p)
}

fn fp_monic(a: &FpPoly, p: u64) -> FpPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let inv = fp_inv(*a.last().unwrap(), p);
    a.iter().map(|&c| fp_mulc(c, inv, p)).collect()
}

fn fp_xgcd(a: &FpPoly, b: &FpPoly, p: u64) -> (FpPoly, FpPoly, FpPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = fp_divrem(&r0, &r1, p);
        let s = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
        let t = fp_sub(&t0, &fp_mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    let inv = fp_inv(*r0.last().unwrap(), p);
    let norm = |v: &FpPoly| v.iter().map(|&c| fp_mulc(c, inv, p)).collect::<FpPoly>();
    (norm(&r0), norm(&s0), norm(&t0))
}

fn fp_derivative(a: &FpPoly, p: u64) -> FpPoly {
    if a.len() <= 1 {
        return Vec::new();
    }
    fp_trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| fp_mulc(c, (i as u64) % p, p))
            .collect(),
    )
}

fn fp_pow_mod(base: &FpPoly, mut e: u64, m: &FpPoly, p: u64) -> FpPoly {
    let mut result = vec![1u64];
    let mut b = fp_divrem(base, m, p).1;
    while e > 0 {
        if e & 1 == 1 {
            result = fp_divrem(&fp_mul(&result, &b, p), m, p).1;
        }
        b = fp_divrem(&fp_mul(&b, &b, p), m, p).1;
        e >>= 1;
    }
    result
}

/// Berlekamp factorization of a monic squarefree polynomial over F_p.
fn berlekamp(f: &FpPoly, p: u64) -> Vec<FpPoly> {
    let n = z_deg(&f.iter().map(|&c| Int::from(c)).collect::<Vec<_>>());
    if n <= 1 {
        return vec![f.clone()];
    }
    // Q matrix: column i = x^(i*p) mod f
    let xp = fp_pow_mod(&vec![0, 1], p, f, p);
    let mut cols: Vec<FpPoly> = Vec::with_capacity(n);
    let mut cur = vec![1u64];
    for _ in 0..n {
        cols.push(cur.clone());
        cur = fp_divrem(&fp_mul(&cur, &xp, p), f, p).1;
    }
    // (Q - I) as row-major matrix m[r][c]
    let mut m = vec![vec![0u64; n]; n];
    for (c, col) in cols.iter().enumerate() {
        for r in 0..n {
            m[r][c] = col.get(r).copied().unwrap_or(0);
        }
        m[c][c] = (m[c][c] + p - 1) % p;
    }
    // kernel basis by Gaussian elimination
    let mut pivots: Vec<Option<usize>> = vec![None; n];
    let mut rank = 0usize;
    for col in 0..n {
        let mut pivot_row = None;
        for r in rank..n {
            if m[r][col] != 0 {
                pivot_row = Some(r);
                break;
            }
        }
        let Some(pr) = pivot_row else { continue };
        m.swap(rank, pr);
        let inv = fp_inv(m[rank][col], p);
        for c in 0..n {
            m[rank][c] = fp_mulc(m[rank][c], inv, p);
        }
        for r in 0..n {
            if r != rank && m[r][col] != 0 {
                let factor = m[r][col];
                for c in 0..n {
                    m[r][c] = (m[r][c] + p - fp_mulc(factor, m[rank][c], p)) % p;
                }
            }
        }
        pivots[col] = Some(rank);
        rank += 1;
    }
    let mut basis: Vec<FpPoly> = Vec::new();
    for col in 0..n {
        if pivots[col].is_some() {
            continue;
        }
        let mut v = vec![0u64; n];
        v[col] = 1;
        for (c, piv) in pivots.iter().enumerate() {
            if let Some(r) = piv {
                v[c] = (p - m[*r][col]) % p;
            }
        }
        basis.push(fp_trim(v));
    }
    let r = basis.len();
    let mut factors = vec![f.clone()];
    if r == 1 {
        return factors;
    }
    for v in &basis {
        if v.len() <= 1 {
            continue; // constant vector splits nothing
        }
        let current = std::mem::take(&mut factors);
        for u in current {
            if u.len() <= 2 {
                factors.push(u);
                continue;
            }
            let mut rest = u.clone();
            for s in 0..p {
                if rest.len() <= 2 {
                    break;
                }
                let mut shifted = v.clone();
                shifted[0] = (shifted[0] + p - s) % p;
                let g = fp_gcd(&rest, &fp_trim(shifted), p);
                if g.len() > 1 && g.len() < rest.len() {
                    rest = fp_divrem(&rest, &g, p).0;
                    factors.push(g);
                }
            }
            if rest.len() > 1 {
                factors.push(rest);
            }
        }
        if factors.len() == r {
            break;
        }
    }
    factors.into_iter().map(|f| fp_monic(&f, p)).collect()
}

// ---------------------------------------------------------------------------
// Hensel lifting.
// ---------------------------------------------------------------------------

fn zm_reduce(a: &ZPoly, m: &Int) -> ZPoly {
    z_trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn zm_mul(a: &ZPoly, b: &ZPoly, m: &Int) -> ZPoly {
    zm_reduce(&z_mul(a, b), m)
}

fn zm_add(a: &ZPoly, b: &ZPoly, m: &Int) -> ZPoly {
    let n = a.len().max(b.len());
    let mut out = vec![Int::zero(); n];
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(Int::zero);
        let y = b.get(i).cloned().unwrap_or_else(Int::zero);
        out[i] = (x + y).mod_floor(m);
    }
    z_trim(out)
}

fn zm_sub(a: &ZPoly, b: &ZPoly, m: &Int) -> ZPoly {
    let n = a.len().max(b.len());
    let mut out = vec![Int::zero(); n];
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(Int::zero);
        let y = b.get(i).cloned().unwrap_or_else(Int::zero);
        out[i] = (x - y).mod_floor(m);
    }
    z_trim(out)
}

/// Division by a monic polynomial, coefficients mod m.
fn zm_divrem_monic(a: &ZPoly, d: &ZPoly, m: &Int) -> (ZPoly, ZPoly) {
    assert!(d.last().map(|c| c.is_one()).unwrap_or(false), "divisor must be monic");
    let mut r = zm_reduce(a, m);
    if r.len() < d.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![Int::zero(); r.len() - d.len() + 1];
    for k in (0..q.len()).rev() {
        let c = r[k + d.len() - 1].clone();
        if c.is_zero() {
            continue;
        }
        q[k] = c.clone();
        for (i, dc) in d.iter().enumerate() {
            r[k + i] = (&r[k + i] - &c * dc).mod_floor(m);
        }
    }
    (z_trim(q), z_trim(r))
}

/// One quadratic Hensel step (modulus m -> m^2): given f = g*h and
/// s*g + t*h = 1 (mod m) with h monic, lifts all four.
#[allow(clippy::too_many_arguments)]
fn hensel_step(
    f: &ZPoly,
    g: &ZPoly,
    h: &ZPoly,
    s: &ZPoly,
    t: &ZPoly,
    m: &Int,
) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let m2 = m * m;
    let e = zm_sub(f, &zm_mul(g, h, &m2), &m2);
    let (q, r) = zm_divrem_monic(&zm_mul(s, &e, &m2), h, &m2);
    let g1 = zm_add(&zm_add(g, &zm_mul(t, &e, &m2), &m2), &zm_mul(&q, g, &m2), &m2);
    let h1 = zm_add(h, &r, &m2);
    let one = vec![Int::one()];
    let b = zm_sub(
        &zm_add(&zm_mul(s, &g1, &m2), &zm_mul(t, &h1, &m2), &m2),
        &one,
        &m2,
    );
    let (c, d) = zm_divrem_monic(&zm_mul(s, &b, &m2), &h1, &m2);
    let s1 = zm_sub(s, &d, &m2);
    let t1 = zm_sub(&zm_sub(t, &zm_mul(t, &b, &m2), &m2), &zm_mul(&c, &g1, &m2), &m2);
    (g1, h1, s1, t1)
}

fn fp_to_z(a: &FpPoly) -> ZPoly {
    a.iter().map(|&c| Int::from(c)).collect()
}

/// Lifts the mod-p factorization `f = lc(f) * prod(factors)` to mod `target`
/// (a power of p). Returned factors are monic mod target.
fn hensel_lift_all(f: &ZPoly, factors: &[FpPoly], p: u64, target: &Int) -> Vec<ZPoly> {
    if factors.len() == 1 {
        let lc = f.last().unwrap().mod_floor(target);
        let lc_inv = mod_inverse(&lc, target);
        return vec![zm_reduce(
            &f.iter().map(|c| c * &lc_inv).collect::<Vec<_>>(),
            target,
        )];
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let pbig = Int::from(p);
    let lc = f.last().unwrap().mod_floor(&pbig);
    let mut gp = vec![lc.to_u64_digits().1.first().copied().unwrap_or(0) % p];
    for fac in left {
        gp = fp_mul(&gp, fac, p);
    }
    let mut hp = vec![1u64];
    for fac in right {
        hp = fp_mul(&hp, fac, p);
    }
    let (gcd, s, t) = fp_xgcd(&gp, &hp, p);
    assert_eq!(gcd, vec![1u64], "factors not coprime mod p");
    let (mut g, mut h, mut s, mut t) = (fp_to_z(&gp), fp_to_z(&hp), fp_to_z(&s), fp_to_z(&t));
    let mut m = pbig.clone();
    while m < *target {
        let (g1, h1, s1, t1) = hensel_step(&zm_reduce(f, &(&m * &m)), &g, &h, &s, &t, &m);
        g = g1;
        h = h1;
        s = s1;
        t = t1;
        m = &m * &m;
    }
    let g = zm_reduce(&g, target);
    let h = zm_reduce(&h, target);
    let mut out = hensel_lift_all(&g, left, p, target);
    out.extend(hensel_lift_all(&h, right, p, target));
    out
}

fn mod_inverse(a: &Int, m: &Int) -> Int {
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one(), "not invertible");
    e.x.mod_floor(m)
}

fn symmetric_mod(c: &Int, m: &Int) -> Int {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Factorization of a primitive squarefree integer polynomial with positive
/// leading coefficient into primitive irreducible integer polynomials.
fn factor_squarefree_z(f: &ZPoly) -> Vec<ZPoly> {
    let n = z_deg(f);
    if n <= 1 {
        return vec![f.clone()];
    }
    // find a prime where f stays squarefree with the same degree
    let lc = f.last().unwrap();
    let mut p = 2u64;
    let (p, fp) = loop {
        p = next_prime(p);
        assert!(p < 100_000, "prime search overflow in factorization");
        if (lc % Int::from(p)).is_zero() {
            continue;
        }
        let fp: FpPoly = fp_trim(
            f.iter()
                .map(|c| {
                    let r = c.mod_floor(&Int::from(p));
                    r.to_u64_digits().1.first().copied().unwrap_or(0)
                })
                .collect(),
        );
        let dfp = fp_derivative(&fp, p);
        if dfp.is_empty() {
            continue;
        }
        if fp_gcd(&fp, &dfp, p).len() == 1 {
            break (p, fp_monic(&fp, p));
        }
    };
    let modular = berlekamp(&fp, p);
    if modular.len() == 1 {
        return vec![f.clone()];
    }
    // Mignotte-style bound on the coefficients of lc * (any factor of f)
    let norm2_sq: Int = f.iter().map(|c| c * c).sum();
    let norm2 = norm2_sq.sqrt() + 1;
    let bound: Int = (Int::from(2).pow(n as u32 + 1)) * norm2 * lc.abs();
    let mut target = Int::from(p);
    while target < &bound * 2 + 1 {
        target = &target * &target;
    }
    let mut lifted = hensel_lift_all(f, &modular, p, &target);

    // subset recombination
    let mut result: Vec<ZPoly> = Vec::new();
    let mut remaining = f.clone();
    let mut size = 1usize;
    'outer: while 2 * size <= lifted.len() {
        let indices: Vec<usize> = (0..lifted.len()).collect();
        for combo in combinations(&indices, size) {
            let lc_cur = remaining.last().unwrap().clone();
            let mut cand = vec![lc_cur.mod_floor(&target)];
            for &i in &combo {
                cand = zm_mul(&cand, &lifted[i], &target);
            }
            let cand: ZPoly = z_trim(cand.iter().map(|c| symmetric_mod(c, &target)).collect());
            if cand.is_empty() {
                continue;
            }
            let cand = z_primitive(&cand);
            if let Some(q) = z_exact_div(&remaining, &cand) {
                result.push(if cand.last().unwrap().is_negative() {
                    cand.iter().map(|c| -c).collect()
                } else {
                    cand
                });
                remaining = if q.last().unwrap().is_negative() {
                    q.iter().map(|c| -c).collect()
                } else {
                    z_primitive(&q)
                };
                let mut keep: Vec<ZPoly> = Vec::new();
                for (i, fac) in lifted.drain(..).enumerate() {
                    if !combo.contains(&i) {
                        keep.push(fac);
                    }
                }
                lifted = keep;
                continue 'outer;
            }
        }
        size += 1;
    }
    if z_deg(&remaining) > 0 {
        result.push(remaining);
    }
    result
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut combo: Vec<usize> = Vec::new();
    fn rec(items: &[usize], k: usize, start: usize, combo: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if combo.len() == k {
            out.push(combo.clone());
            return;
        }
        for i in start..items.len() {
            combo.push(items[i]);
            rec(items, k, i + 1, combo, out);
            combo.pop();
        }
    }
    rec(items, k, 0, &mut combo, &mut out);
    out
}

fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    loop {
        if is_prime(c) {
            return c;
        }
        c += 1;
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Factorization over Q: returns `(unit, factors)` where the factors are
/// monic irreducible with multiplicities and
/// `p = unit * prod f_i^(m_i)`.
pub fn factor_q(p: &UPoly<Rationals>) -> (Rat, Vec<(UPoly<Rationals>, usize)>) {
    assert!(!p.is_zero(), "factor of zero polynomial");
    let unit = p.lc().clone();
    if p.deg() == 0 {
        return (unit, Vec::new());
    }
    let mut out: Vec<(UPoly<Rationals>, usize)> = Vec::new();
    for (g, mult) in p.squarefree_decomposition(&Rationals) {
        let gz = q_to_primitive_z(&g);
        for irr in factor_squarefree_z(&gz) {
            out.push((z_to_q(&irr).monic(&Rationals), mult));
        }
    }
    // deterministic ordering: by degree, then coefficient sequence display
    out.sort_by(|a, b| {
        a.0.deg()
            .cmp(&b.0.deg())
            .then_with(|| format!("{:?}", a.0).cmp(&format!("{:?}", b.0)))
    });
    (unit, out)
}

pub fn is_irreducible_q(p: &UPoly<Rationals>) -> bool {
    if p.is_zero() || p.deg() == 0 {
        return false;
    }
    let (_, factors) = factor_q(p);
    factors.len() == 1 && factors[0].1 == 1
}

/// All rational roots of `p`, with multiplicity collapsed.
pub fn rational_roots(p: &UPoly<Rationals>) -> Vec<Rat> {
    let (_, factors) = factor_q(p);
    let mut roots: Vec<Rat> = factors
        .iter()
        .filter(|(f, _)| f.deg() == 1)
        .map(|(f, _)| Rationals.neg(&f.coeffs[0]))
        .collect();
    roots.sort();
    roots
}

#[cfg(test)]
mod tests {
    use super::super::ring::rat;
    use super::*;

    fn qp(cs: &[i64]) -> UPoly<Rationals> {
        UPoly::from_coeffs(&Rationals, cs.iter().map(|&c| rat(c)).collect())
    }

    fn check_factorization(p: &UPoly<Rationals>) {
        let (unit, factors) = factor_q(p);
        let mut prod = UPoly::constant(&Rationals, unit);
        for (f, m) in &factors {
            for _ in 0..*m {
                prod = prod.mul(&Rationals, f);
            }
        }
        assert_eq!(&prod, p, "factor product mismatch");
    }

    #[test]
    fn factor_known_products() {
        // (T^2+1)(T^2-2)
        let p = qp(&[1, 0, 1]).mul(&Rationals, &qp(&[-2, 0, 1]));
        let (_, f) = factor_q(&p);
        assert_eq!(f.len(), 2);
        check_factorization(&p);

        // T^4 + 1 irreducible
        assert!(is_irreducible_q(&qp(&[1, 0, 0, 0, 1])));

        // T^4 + 4 = (T^2-2T+2)(T^2+2T+2)
        let (_, f) = factor_q(&qp(&[4, 0, 0, 0, 1]));
        assert_eq!(f.len(), 2);
        assert!(f.iter().all(|(g, _)| g.deg() == 2));

        // (T-1)^2 (T+3) (T^2+T+1)
        let p = qp(&[-1, 1])
            .mul(&Rationals, &qp(&[-1, 1]))
            .mul(&Rationals, &qp(&[3, 1]))
            .mul(&Rationals, &qp(&[1, 1, 1]));
        let (_, f) = factor_q(&p);
        assert_eq!(f.iter().map(|(_, m)| m).sum::<usize>(), 4);
        check_factorization(&p);
    }

    #[test]
    fn factor_cubics_and_roots() {
        // T^3 + 1 = (T+1)(T^2-T+1)
        let (_, f) = factor_q(&qp(&[1, 0, 0, 1]));
        assert_eq!(f.len(), 2);
        assert_eq!(rational_roots(&qp(&[1, 0, 0, 1])), vec![rat(-1)]);
        // T^3 - 2 irreducible
        assert!(is_irreducible_q(&qp(&[-2, 0, 0, 1])));
        // T^2 - T + 1 irreducible (sixth root of unity)
        assert!(is_irreducible_q(&qp(&[1, -1, 1])));
    }

    #[test]
    fn factor_with_rational_coefficients() {
        // (T - 1/2)(T + 3) given with rational coefficients
        let p = UPoly::from_coeffs(
            &Rationals,
            vec![rat(-3) / rat(2), rat(5) / rat(2), rat(1)],
        );
        let (_, f) = factor_q(&p);
        assert_eq!(f.len(), 2);
        check_factorization(&p);
        let roots = rational_roots(&p);
        assert_eq!(roots, vec![rat(-3), rat(1) / rat(2)]);
    }

    #[test]
    fn large_degree_cyclotomic_like() {
        // T^6 - 1 = (T-1)(T+1)(T^2+T+1)(T^2-T+1)
        let (_, f) = factor_q(&qp(&[-1, 0, 0, 0, 0, 0, 1]));
        assert_eq!(f.len(), 4);
        check_factorization(&qp(&[-1, 0, 0, 0, 0, 0, 1]));
    }
}
