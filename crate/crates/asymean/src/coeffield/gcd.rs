//! Multivariate GCD over the rationals.
//!
//! The algorithm recurses on the highest occurring symbol: split content
//! and primitive part, then run a primitive polynomial remainder sequence
//! in that symbol. Constants are units, so any constant input makes the
//! GCD trivial. Results are monic under graded-lex, which makes the
//! reduced form of a rational function canonical.

use num::{One, Zero};

use super::poly::Polynomial;

/// Monic GCD. `gcd(0, 0) = 0`, `gcd(p, 0) = monic(p)`.
pub fn poly_gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(&a.table);
    }
    let v = a
        .top_symbol()
        .max(b.top_symbol())
        .expect("nonconstant polynomials have a top symbol");

    let fa = a.coeffs_in(v);
    let fb = b.coeffs_in(v);
    let ca = content(&fa);
    let cb = content(&fb);
    let pa: Vec<Polynomial> = fa
        .iter()
        .map(|p| div_exact(p, &ca).expect("content divides"))
        .collect();
    let pb: Vec<Polynomial> = fb
        .iter()
        .map(|p| div_exact(p, &cb).expect("content divides"))
        .collect();
    let cont = poly_gcd(&ca, &cb);

    let (mut f, mut g) = if deg(&pa) >= deg(&pb) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    loop {
        let r = pseudo_rem(&f, &g);
        if r.iter().all(|p| p.is_zero()) {
            break;
        }
        let rc = content(&r);
        let rp: Vec<Polynomial> = r
            .iter()
            .map(|p| div_exact(p, &rc).expect("content divides"))
            .collect();
        f = g;
        g = rp;
    }
    let table = &cont.table;
    let prim = Polynomial::from_coeffs_in(table, v, &g);
    (&cont * &prim).monic()
}

/// Exact multivariate division; `None` when `b` does not divide `a`.
pub fn div_exact(a: &Polynomial, b: &Polynomial) -> Option<Polynomial> {
    if a.is_zero() {
        return Some(Polynomial::zero(&a.table));
    }
    if let Some(k) = b.constant_value() {
        if k.is_zero() {
            return None;
        }
        return Some(a.scale(&(num::BigRational::one() / k)));
    }
    let mut rem = a.clone();
    let mut quot = Polynomial::zero(&a.table);
    let (bm, bc) = {
        let (m, c) = b.leading().unwrap();
        (m.clone(), c.clone())
    };
    while !rem.is_zero() {
        let (rm, rc) = {
            let (m, c) = rem.leading().unwrap();
            (m.clone(), c.clone())
        };
        let qm = rm.div(&bm)?;
        let qc = rc / bc.clone();
        let mut t = Polynomial::zero(&a.table);
        t.add_term(qm, qc);
        quot = &quot + &t;
        rem = &rem - &(&t * b);
    }
    Some(quot)
}

fn deg(f: &[Polynomial]) -> usize {
    f.iter().rposition(|p| !p.is_zero()).unwrap_or(0)
}

/// GCD of the coefficients of a univariate view.
fn content(f: &[Polynomial]) -> Polynomial {
    let mut acc = Polynomial::zero(&f[0].table);
    for p in f {
        if !p.is_zero() {
            acc = poly_gcd(&acc, p);
            if acc.is_one() {
                break;
            }
        }
    }
    acc
}

/// Pseudo-remainder of dense univariate views (scaling factors are
/// irrelevant here because callers take primitive parts).
fn pseudo_rem(f: &[Polynomial], g: &[Polynomial]) -> Vec<Polynomial> {
    let dg = deg(g);
    let lc = &g[dg];
    let mut r: Vec<Polynomial> = f.to_vec();
    loop {
        let dr = deg(&r);
        if (dr == 0 && r[0].is_zero()) || dr < dg {
            return r;
        }
        let lr = r[dr].clone();
        let shift = dr - dg;
        // r = lc*r - lr*g*v^shift
        let mut next = vec![Polynomial::zero(&lr.table); dr];
        if dr == 0 {
            next = vec![Polynomial::zero(&lr.table)];
        }
        for (i, p) in r.iter().enumerate() {
            if i == dr {
                continue;
            }
            next[i] = p * lc;
        }
        for (j, p) in g.iter().enumerate().take(dg) {
            next[j + shift] = &next[j + shift] - &(p * &lr);
        }
        while next.len() > 1 && next.last().unwrap().is_zero() {
            next.pop();
        }
        r = next;
    }
}
