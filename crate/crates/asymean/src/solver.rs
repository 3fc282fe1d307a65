//! Solve `B(A(x)) = C(x)` for an asymptotic series `A`.
//!
//! Two branches exist, split by the sign of the solution's leading
//! exponent `w`. Ascending (`w = v/u > 0`) handles infinite `B` whose
//! coefficients obey the grid condition; descending (`w = v/(u−M) < 0`)
//! requires `B` to be a finite sum (its last nonzero coefficient `b_M`
//! dominates the composition). Equations with exponent 0 are reduced by
//! [`strip_constant`] and re-solved. [`compose`] computes `B∘A` directly
//! and serves as the round-trip oracle for both branches.

use num::{BigRational, One, Signed, Zero};

use crate::coeffield::Coefficient;
use crate::series::{AsymptoticSeries, Exponent, PowTable};
use crate::{Error, Result};

/// Which branch solved the equation, with its computed data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BranchKind {
    Ascending,
    Descending,
}

/// Diagnostic record of a successful solve.
#[derive(Clone, Debug)]
pub struct SolveBranch {
    pub branch: BranchKind,
    pub w: BigRational,
    pub a0: Coefficient,
}

/// A solved series together with its branch record.
#[derive(Clone, Debug)]
pub struct SolveOutcome {
    pub series: AsymptoticSeries,
    pub branch: SolveBranch,
}

fn require_plain(series: &AsymptoticSeries, name: &str) -> Result<BigRational> {
    if !series.log_coeff().is_zero() {
        return Err(Error::Validation(format!(
            "{name} has a logarithmic part; the solver handles pure power series"
        )));
    }
    if series.is_zero() {
        return Err(Error::Validation(format!("{name} is the zero series")));
    }
    series
        .exponent()
        .as_rational()
        .cloned()
        .ok_or_else(|| {
            Error::Validation(format!(
                "{name} has a symbolic exponent; the solver requires numeric exponents"
            ))
        })
}

fn to_i64(q: &BigRational) -> Option<i64> {
    if q.is_integer() {
        q.to_integer().try_into().ok()
    } else {
        None
    }
}

/// Solve on the ascending branch: `A = x^w (a₀ + a₁x⁻¹ + …)`, `w = v/u > 0`.
pub fn solve_ascending(
    b: &AsymptoticSeries,
    c: &AsymptoticSeries,
    n_order: usize,
) -> Result<SolveOutcome> {
    let table = b.table();
    let u = require_plain(b, "B")?;
    let v = require_plain(c, "C")?;
    if u.is_zero() {
        return Err(Error::Validation(
            "ascending branch requires u \u{2260} 0; reduce exponent-0 equations with strip_constant".into(),
        ));
    }
    // condition (1): same sign, w rational
    if (&u * &v).is_negative() || v.is_zero() {
        return Err(Error::Validation(
            "ascending branch condition (1) violated: u and v must have the same sign".into(),
        ));
    }
    let w = &v / &u;

    // condition (2): b_n = 0 unless n·w is a positive integer
    for (n, bn) in b.coeffs().iter().enumerate().skip(1) {
        if bn.is_zero() {
            continue;
        }
        let nw = &w * BigRational::from_integer(n.into());
        if !nw.is_integer() || nw < BigRational::one() {
            return Err(Error::Validation(format!(
                "ascending branch condition (2) violated at n={n}: n\u{b7}w = {nw} is not a positive integer"
            )));
        }
    }

    let b0 = b.coeffs()[0].clone();
    let c0 = c.coeffs()[0].clone();

    // condition (3): b0, c0 of the same sign (checked when numeric)
    if let (Some(qb), Some(qc)) = (b0.as_rational(), c0.as_rational()) {
        if (qb * qc).is_negative() {
            return Err(Error::Validation(
                "ascending branch condition (3) violated: b\u{2080} and c\u{2080} must have the same sign".into(),
            ));
        }
    }

    // highest B index that can reach order N: j with w·j <= N
    let jmax_q = (BigRational::from_integer((n_order as i64).into()) / &w).floor();
    let jmax: usize = to_i64(&jmax_q)
        .and_then(|k| usize::try_from(k).ok())
        .ok_or_else(|| Error::Validation("order bound out of range".into()))?;
    let bs = b.truncate(jmax)?.coeffs().to_vec();
    let cs = c.truncate(n_order)?.coeffs().to_vec();

    let ratio = &c0 / &b0;
    let inv_u = BigRational::one() / &u;
    let a0 = crate::series::leading_power(&ratio, &inv_u)?;
    // P0(u) = a0^u = c0/b0 by construction
    let p0 = ratio;

    let uq = Coefficient::from_rational(table, u.clone());
    let mut tables: Vec<(usize, PowTable)> = Vec::new();
    for (j, bj) in bs.iter().enumerate() {
        if j > 0 && bj.is_zero() {
            continue;
        }
        let rho = &uq - &Coefficient::from_integer(table, j as i64);
        // a0^(u-j) = P0 / a0^j
        let p0j = &p0 / &a0.pow(j as i64)?;
        tables.push((j, PowTable::new(rho, p0j)));
    }

    let mut a: Vec<Coefficient> = vec![a0.clone()];
    let denom = &(&b0 * &uq) * &p0; // b0·u·P0(u)
    let scale = &a0 / &denom;
    for n in 1..=n_order {
        let mut bracket = Coefficient::zero(table);
        let nq = Coefficient::from_integer(table, n as i64);
        for (j, tbl) in tables.iter_mut() {
            let j = *j;
            if j == 0 {
                // the j = 0 term is split out below
                continue;
            }
            let wj = &w * BigRational::from_integer((j as i64).into());
            let Some(wj) = to_i64(&wj) else { continue };
            let wj = wj as usize;
            if wj > n {
                continue;
            }
            let p = tbl.get(&a, n - wj);
            bracket = &bracket + &(&bs[j] * &p);
        }
        let mut ksum = Coefficient::zero(table);
        {
            let tbl0 = &mut tables[0].1;
            for k in 1..n {
                if a[k].is_zero() {
                    continue;
                }
                let kq = Coefficient::from_integer(table, k as i64);
                let weight = &(&kq * &(&Coefficient::one(table) + &uq)) - &nq;
                if weight.is_zero() {
                    continue;
                }
                ksum = &ksum + &(&(&weight * &a[k]) * &tbl0.get(&a, n - k));
            }
        }
        let inner = &(&bracket + &(&(&b0 / &(&nq * &a0)) * &ksum)) - &cs[n];
        a.push(-&(&scale * &inner));
    }

    let series = AsymptoticSeries::from_coeffs(table, Exponent::rational(w.clone()), a, false);
    Ok(SolveOutcome {
        series,
        branch: SolveBranch {
            branch: BranchKind::Ascending,
            w,
            a0,
        },
    })
}

/// Solve on the descending branch: `B` finite, `w = v/(u−M) < 0`.
pub fn solve_descending(
    b: &AsymptoticSeries,
    c: &AsymptoticSeries,
    n_order: usize,
) -> Result<SolveOutcome> {
    let table = b.table();
    let u = require_plain(b, "B")?;
    let v = require_plain(c, "C")?;
    if !b.exact() {
        return Err(Error::Validation(
            "descending branch requires a finite B: the order-N tail is unknown without the finiteness flag".into(),
        ));
    }
    let m = b
        .coeffs()
        .iter()
        .rposition(|x| !x.is_zero())
        .expect("nonzero series");
    let rho_q = &u - BigRational::from_integer((m as i64).into());
    if rho_q.is_zero() {
        return Err(Error::Validation(
            "descending branch is degenerate: u \u{2212} M = 0, w = v/(u\u{2212}M) undefined".into(),
        ));
    }
    let w = &v / &rho_q;
    if !w.is_negative() {
        return Err(Error::Validation(format!(
            "descending branch requires w = v/(u\u{2212}M) < 0, got {w}"
        )));
    }
    // alignment: b_{M-j} = 0 whenever w·j is not an integer
    for j in 1..=m {
        if b.coeffs()[m - j].is_zero() {
            continue;
        }
        let wj = &w * BigRational::from_integer((j as i64).into());
        if !wj.is_integer() {
            return Err(Error::Validation(format!(
                "descending branch alignment condition violated at index {}: w\u{b7}{j} = {wj} is not an integer",
                m - j
            )));
        }
    }

    let bm = b.coeffs()[m].clone();
    let c0 = c.coeffs()[0].clone();
    let cs = c.truncate(n_order)?.coeffs().to_vec();

    let ratio = &c0 / &bm;
    let inv_rho = BigRational::one() / &rho_q;
    let a0 = crate::series::leading_power(&ratio, &inv_rho)?;
    let p0 = ratio; // a0^rho = c0/bM

    let rho = Coefficient::from_rational(table, rho_q.clone());
    let mut tables: Vec<PowTable> = Vec::new();
    for j in 0..=m {
        let rj = &rho + &Coefficient::from_integer(table, j as i64);
        let p0j = &p0 * &a0.pow(j as i64)?;
        tables.push(PowTable::new(rj, p0j));
    }

    let mut a: Vec<Coefficient> = vec![a0.clone()];
    let denom = &(&rho * &bm) * &p0;
    let scale = &a0 / &denom;
    for n in 1..=n_order {
        let nq = Coefficient::from_integer(table, n as i64);
        let mut jsum = Coefficient::zero(table);
        for j in 1..=m {
            if b.coeffs()[m - j].is_zero() {
                continue;
            }
            let wj = &w * BigRational::from_integer((j as i64).into());
            let wj = to_i64(&wj).expect("alignment checked");
            let idx = n as i64 + wj;
            if idx < 0 {
                continue;
            }
            let p = tables[j].get(&a, idx as usize);
            jsum = &jsum + &(&b.coeffs()[m - j] * &p);
        }
        let mut ksum = Coefficient::zero(table);
        for k in 1..n {
            if a[k].is_zero() {
                continue;
            }
            let kq = Coefficient::from_integer(table, k as i64);
            let weight = &(&kq * &(&Coefficient::one(table) + &rho)) - &nq;
            if weight.is_zero() {
                continue;
            }
            ksum = &ksum + &(&(&weight * &a[k]) * &tables[0].get(&a, n - k));
        }
        let inner = &(&cs[n] - &jsum) - &(&(&bm / &(&nq * &a0)) * &ksum);
        a.push(&scale * &inner);
    }

    let series = AsymptoticSeries::from_coeffs(table, Exponent::rational(w.clone()), a, false);
    Ok(SolveOutcome {
        series,
        branch: SolveBranch {
            branch: BranchKind::Descending,
            w,
            a0,
        },
    })
}

/// Remove the shared constant from an exponent-0 equation so the result
/// is solvable by [`solve_ascending`].
pub fn strip_constant(
    b: &AsymptoticSeries,
    c: &AsymptoticSeries,
) -> Result<(AsymptoticSeries, AsymptoticSeries)> {
    if !b.log_coeff().is_zero() || !c.log_coeff().is_zero() {
        return Err(Error::Validation(
            "log part present; logarithmic equations belong to the integral-mean path".into(),
        ));
    }
    let zero_exp = |s: &AsymptoticSeries| {
        s.exponent()
            .as_rational()
            .map(|q| q.is_zero())
            .unwrap_or(false)
    };
    if !zero_exp(b) {
        return Err(Error::Validation(
            "strip_constant expects B with leading exponent 0".into(),
        ));
    }
    if !zero_exp(c) || b.coeffs()[0] != c.coeffs()[0] {
        return Err(Error::Validation(
            "constant mismatch: b\u{2080} = c\u{2080} is necessary for solvability".into(),
        ));
    }
    let drop_head = |s: &AsymptoticSeries, name: &str| -> Result<AsymptoticSeries> {
        let mut coeffs = s.coeffs().to_vec();
        if coeffs[1..].iter().all(|x| x.is_zero()) {
            return Err(Error::Validation(format!(
                "{name} is constant after removing the shared term"
            )));
        }
        coeffs[0] = Coefficient::zero(s.table());
        Ok(AsymptoticSeries::from_coeffs(
            s.table(),
            s.exponent().clone(),
            coeffs,
            s.exact(),
        ))
    };
    Ok((drop_head(b, "B")?, drop_head(c, "C")?))
}

/// Direct composition `B(A(x))` to order `n_order` below the leading term.
pub fn compose(
    b: &AsymptoticSeries,
    a: &AsymptoticSeries,
    n_order: usize,
) -> Result<AsymptoticSeries> {
    let table = b.table();
    if !b.log_coeff().is_zero() || !a.log_coeff().is_zero() {
        return Err(Error::Validation("log part present in composition".into()));
    }
    let u = require_plain(b, "B")?;
    let w = require_plain(a, "A")?;
    if w.is_zero() {
        return Err(Error::Validation(
            "composition requires a nonzero leading exponent for A".into(),
        ));
    }
    // the composite's lead comes from j = 0 when w > 0 and from the last
    // nonzero B coefficient when w < 0
    let (bs, lead_j) = if w.is_positive() {
        let q = (BigRational::from_integer((n_order as i64).into()) / &w).floor();
        let jmax = to_i64(&q)
            .and_then(|k| usize::try_from(k).ok())
            .ok_or_else(|| Error::Validation("order bound out of range".into()))?;
        (b.truncate(jmax)?, 0usize)
    } else if b.exact() {
        let m = b
            .coeffs()
            .iter()
            .rposition(|x| !x.is_zero())
            .expect("nonzero series");
        (b.clone(), m)
    } else {
        return Err(Error::Validation(
            "composition with w \u{2264} 0 requires a finite B".into(),
        ));
    };
    let mut acc: Option<AsymptoticSeries> = None;
    for (j, bj) in bs.coeffs().iter().enumerate() {
        if bj.is_zero() {
            continue;
        }
        // depth of this term's lead below the composite's lead
        let depth = &w * BigRational::from_integer((j as i64 - lead_j as i64).into());
        let rel = BigRational::from_integer((n_order as i64).into()) - &depth;
        if rel.is_negative() {
            continue;
        }
        // depth below this term's own leading exponent
        let rel = rel.floor();
        let rel = to_i64(&rel)
            .and_then(|k| usize::try_from(k).ok())
            .ok_or_else(|| Error::Validation("order bound out of range".into()))?;
        let rho = Coefficient::from_rational(
            table,
            &u - BigRational::from_integer((j as i64).into()),
        );
        let term = crate::series::pow_series(a, &rho, rel)?.scale(bj);
        acc = Some(match acc {
            None => term,
            Some(s) => s.add(&term)?,
        });
    }
    let acc = acc.ok_or_else(|| Error::Validation("B is the zero series".into()))?;
    if acc.exact() || acc.order() >= n_order {
        acc.truncate(n_order)
    } else {
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffield::{parse_coefficient, SymbolTable};
    use std::sync::Arc;

    fn table() -> Arc<SymbolTable> {
        SymbolTable::standard()
    }

    fn ser(exp: i64, coeffs: &[&str], exact: bool) -> AsymptoticSeries {
        let t = table();
        let cs = coeffs
            .iter()
            .map(|c| parse_coefficient(c, &t).unwrap())
            .collect();
        AsymptoticSeries::from_coeffs(&t, Exponent::from_integer(exp), cs, exact)
    }

    fn rat(s: &str) -> BigRational {
        crate::coeffield::parse_rational(s).unwrap()
    }

    #[test]
    fn ascending_square_plus_inverse() {
        // B = x^2 + x^-1 (coeffs 1,0,0,1 at u=2), C = x^2, N = 22
        let b = ser(2, &["1", "0", "0", "1"], true);
        let c = ser(2, &["1"], true);
        let out = solve_ascending(&b, &c, 22).unwrap();
        assert_eq!(out.branch.w, rat("1"));
        let a = out.series;
        assert_eq!(a.exponent().as_rational().unwrap(), &rat("1"));
        let expect: &[(usize, &str)] = &[
            (0, "1"),
            (3, "-1/2"),
            (6, "-3/8"),
            (9, "-1/2"),
            (12, "-105/128"),
            (15, "-3/2"),
            (18, "-3003/1024"),
            (21, "-6"),
        ];
        for (i, cexp) in expect {
            assert_eq!(a.coeffs()[*i].to_string(), *cexp, "a_{i}");
        }
        for (i, cf) in a.coeffs().iter().enumerate() {
            if !expect.iter().any(|(j, _)| j == &i) {
                assert!(cf.is_zero(), "a_{i} should vanish, got {cf}");
            }
        }
        // round-trip
        let back = compose(&b, &a, 22).unwrap();
        assert_eq!(back.coeffs()[0].to_string(), "1");
        for cf in &back.coeffs()[1..] {
            assert!(cf.is_zero(), "compose residue {cf}");
        }
    }

    #[test]
    fn ascending_identity() {
        let b = ser(3, &["1", "2", "0", "-1", "5"], false);
        let out = solve_ascending(&b, &b, 4).unwrap();
        let a = out.series;
        assert!(a.coeffs()[0].is_one());
        for cf in &a.coeffs()[1..] {
            assert!(cf.is_zero());
        }
    }

    #[test]
    fn ascending_layered_root() {
        // B = x^2, C = x^2(1 + 2x^-1): A = sqrt(C)
        let b = ser(2, &["1"], true);
        let c = ser(2, &["1", "2"], true);
        let out = solve_ascending(&b, &c, 8).unwrap();
        let sq = out.series.mul(&out.series).unwrap();
        assert_eq!(sq.coeffs()[0].to_string(), "1");
        assert_eq!(sq.coeffs()[1].to_string(), "2");
        for cf in &sq.coeffs()[2..] {
            assert!(cf.is_zero());
        }
    }

    #[test]
    fn ascending_condition_errors() {
        // u, v of different sign
        let b = ser(2, &["1"], true);
        let c = ser(-1, &["1"], true);
        let e = solve_ascending(&b, &c, 4).unwrap_err();
        assert!(e.to_string().contains("condition (1)"));
        // condition (2): u=2, v=1 gives w=1/2, b_1 != 0 lands off-grid
        let b = ser(2, &["1", "1"], true);
        let c = ser(1, &["1"], true);
        let e = solve_ascending(&b, &c, 4).unwrap_err();
        assert!(e.to_string().contains("condition (2)"));
        // condition (3): opposite leading signs
        let b = ser(1, &["1"], true);
        let c = ser(1, &["-1"], true);
        let e = solve_ascending(&b, &c, 4).unwrap_err();
        assert!(e.to_string().contains("condition (3)"));
        // u = 0
        let b = ser(0, &["1", "1"], true);
        let e = solve_ascending(&b, &b, 4).unwrap_err();
        assert!(e.to_string().contains("strip_constant"));
        // non-representable a0: A^2 = 2x^2
        let b = ser(2, &["1"], true);
        let c = ser(2, &["2"], true);
        assert!(solve_ascending(&b, &c, 2).is_err());
    }

    #[test]
    fn descending_square_plus_inverse() {
        let b = ser(2, &["1", "0", "0", "1"], true);
        let c = ser(2, &["1"], true);
        let out = solve_descending(&b, &c, 43).unwrap();
        assert_eq!(out.branch.w, rat("-2"));
        let a = out.series;
        assert_eq!(a.exponent().as_rational().unwrap(), &rat("-2"));
        let expect: &[(usize, &str)] = &[
            (0, "1"),
            (6, "1"),
            (12, "3"),
            (18, "12"),
            (24, "55"),
            (30, "273"),
            (36, "1428"),
            (42, "7752"),
        ];
        for (i, cexp) in expect {
            assert_eq!(a.coeffs()[*i].to_string(), *cexp, "a_{i}");
        }
        for (i, cf) in a.coeffs().iter().enumerate() {
            if !expect.iter().any(|(j, _)| j == &i) {
                assert!(cf.is_zero(), "a_{i} should vanish, got {cf}");
            }
        }
        // compose(B, A) = x^2 to order 40
        let back = compose(&b, &a, 40).unwrap();
        assert_eq!(back.exponent().as_rational().unwrap(), &rat("2"));
        assert_eq!(back.coeffs()[0].to_string(), "1");
        for cf in back.coeffs()[1..].iter() {
            assert!(cf.is_zero(), "compose residue {cf}");
        }
    }

    #[test]
    fn descending_errors() {
        // degenerate M = u
        let b = ser(1, &["1", "1"], true);
        let c = ser(2, &["1"], true);
        let e = solve_descending(&b, &c, 4).unwrap_err();
        assert!(e.to_string().contains("degenerate"));
        // infinite B
        let b = ser(2, &["1", "0", "0", "1"], false);
        let e = solve_descending(&b, &c, 4).unwrap_err();
        assert!(e.to_string().contains("finite"));
        // w > 0 rejected on this branch
        let b = ser(2, &["1", "0", "0", "1"], true);
        let c = ser(-2, &["1"], true);
        let e = solve_descending(&b, &c, 4).unwrap_err();
        assert!(e.to_string().contains("w"));
    }

    #[test]
    fn strip_constant_reduction() {
        // B = 5 + x^-1, C = 5 + 2x^-1 + x^-2
        let b = ser(0, &["5", "1"], true);
        let c = ser(0, &["5", "2", "1"], true);
        let (b1, c1) = strip_constant(&b, &c).unwrap();
        assert_eq!(b1.exponent().as_rational().unwrap(), &rat("-1"));
        assert_eq!(b1.coeffs().len(), 1);
        assert_eq!(c1.exponent().as_rational().unwrap(), &rat("-1"));
        assert_eq!(c1.coeffs()[0].to_string(), "2");
        assert_eq!(c1.coeffs()[1].to_string(), "1");
        // and the reduced problem solves: B1(A) = C1 with u=v=-1
        let out = solve_ascending(&b1, &c1, 6).unwrap();
        let back = compose(&b1, &out.series, 6).unwrap();
        for (x, y) in back.coeffs().iter().zip(c1.coeffs()) {
            assert_eq!(x, y);
        }
    }

    #[test]
    fn strip_constant_errors() {
        let b = ser(0, &["5", "1"], true);
        let c = ser(0, &["4", "1"], true);
        let e = strip_constant(&b, &c).unwrap_err();
        assert!(e.to_string().contains("constant mismatch"));
        let konst = ser(0, &["5"], true);
        assert!(strip_constant(&konst, &c).is_err());
        let t = table();
        let lg = AsymptoticSeries::new(
            &t,
            Coefficient::one(&t),
            Exponent::from_integer(0),
            vec![Coefficient::from_integer(&t, 5)],
            true,
        );
        let e = strip_constant(&lg, &c).unwrap_err();
        assert!(e.to_string().contains("log part"));
    }

    #[test]
    fn compose_simple() {
        // B = x^2 applied to A = x + alpha
        let b = ser(2, &["1"], true);
        let a = ser(1, &["1", "alpha"], true);
        let r = compose(&b, &a, 2).unwrap();
        assert_eq!(r.exponent().as_rational().unwrap(), &rat("2"));
        assert_eq!(r.coeffs()[1].to_string(), "2*alpha");
        assert_eq!(r.coeffs()[2].to_string(), "alpha^2");
        assert!(r.exact());
    }

    #[test]
    fn solve_extension_is_stable() {
        let b = ser(2, &["1", "0", "0", "1"], true);
        let c = ser(2, &["1"], true);
        let short = solve_ascending(&b, &c, 9).unwrap().series;
        let long = solve_ascending(&b, &c, 22).unwrap().series;
        assert_eq!(short.coeffs(), &long.coeffs()[..10]);
        let shortd = solve_descending(&b, &c, 12).unwrap().series;
        let longd = solve_descending(&b, &c, 43).unwrap().series;
        assert_eq!(shortd.coeffs(), &longd.coeffs()[..13]);
    }
}
