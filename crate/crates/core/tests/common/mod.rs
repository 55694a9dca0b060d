//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_traits::{One, ToPrimitive, Zero};
use toric_degen::exact_linalg::Rat;
use toric_degen::ideal::{IdealGB, Monomial, Polynomial};
use toric_degen::polytope::Point;

pub fn small(p: &Point) -> Vec<i64> {
    p.iter().map(|c| c.to_i64().unwrap()).collect()
}

/// Torus exponent of `x^e` under `x_j -> s lambda^{lift_j} t^{m_j}` and
/// `h -> lambda` when a lift is given, computed with machine integers. The
/// last entry is the power of `s`, i.e. the degree in the `x` variables.
pub fn image(e: &[u32], points: &[Vec<i64>], lift: Option<&[i64]>) -> Vec<i64> {
    let n = points[0].len();
    let mut out = vec![0i64; n + 2];
    for (j, p) in points.iter().enumerate() {
        let k = e[j] as i64;
        for i in 0..n {
            out[i] += k * p[i];
        }
        if let Some(l) = lift {
            out[n] += k * l[j];
        }
        out[n + 1] += k;
    }
    if lift.is_some() {
        out[n] += e[points.len()] as i64;
    }
    out
}

/// Every exponent vector in `nvars` variables of total degree `<= d`.
pub fn monomials_up_to(nvars: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur[i] = k;
            rec(i + 1, left - k, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(0, d, &mut vec![0; nvars], &mut out);
    out
}

/// Sum of coefficients per torus exponent; empty iff `f` vanishes on the
/// parametrization.
pub fn substitute(f: &Polynomial, points: &[Vec<i64>], lift: Option<&[i64]>) -> BTreeMap<Vec<i64>, Rat> {
    let mut acc: BTreeMap<Vec<i64>, Rat> = BTreeMap::new();
    for (m, c) in f.terms() {
        *acc.entry(image(m.exponents(), points, lift)).or_insert_with(Rat::zero) += c;
    }
    acc.retain(|_, c| !c.is_zero());
    acc
}

/// Substitution `x_j -> t^{m_j}` on `on` and `x_j -> 0` elsewhere.
pub fn vanishes_on_piece(f: &Polynomial, points: &[Vec<i64>], on: &[bool]) -> bool {
    let mut acc: BTreeMap<Vec<i64>, Rat> = BTreeMap::new();
    for (m, c) in f.terms() {
        if m.exponents().iter().zip(on).any(|(&e, &inside)| e > 0 && !inside) {
            continue;
        }
        *acc.entry(image(m.exponents(), points, None)).or_insert_with(Rat::zero) += c;
    }
    acc.values().all(Zero::is_zero)
}

/// Outcome of comparing brute-force vanishing with ideal membership on all
/// binomials of degree `<= d`.
pub struct OracleComparison {
    pub monomials: usize,
    /// Vanishing binomials the basis does not reduce to zero.
    pub missed: usize,
    /// Binomials reduced to zero that do not vanish.
    pub spurious: usize,
}

/// `x^a - x^b` vanishes iff the images agree; it lies in the ideal iff the
/// normal forms of `x^a` and `x^b` agree. Comparing both partitions of the
/// monomials checks every binomial in both directions.
pub fn compare_with_oracle(ideal: &IdealGB, points: &[Vec<i64>], lift: Option<&[i64]>, d: u32) -> OracleComparison {
    let ring = ideal.ring().clone();
    let order = ideal.order().clone();
    let mons = monomials_up_to(ring.nvars(), d);
    let keys: Vec<Vec<i64>> = mons.iter().map(|e| image(e, points, lift)).collect();
    let forms: Vec<Polynomial> = mons
        .iter()
        .map(|e| ideal.normal_form(&Polynomial::monomial(ring.clone(), order.clone(), Monomial(e.clone()), Rat::one())).unwrap())
        .collect();
    let (mut missed, mut spurious) = (0, 0);
    for i in 0..mons.len() {
        for j in i + 1..mons.len() {
            let vanish = keys[i] == keys[j];
            let member = forms[i] == forms[j];
            missed += usize::from(vanish && !member);
            spurious += usize::from(member && !vanish);
        }
    }
    OracleComparison { monomials: mons.len(), missed, spurious }
}

/// Leading and trailing coefficients `1` and `-1`, two terms.
pub fn is_unit_binomial(p: &Polynomial) -> bool {
    let t = p.terms();
    t.len() == 2 && t[0].1 == Rat::one() && t[1].1 == -Rat::one()
}

/// Same total degree in the first `count` variables for every term.
pub fn x_homogeneous(p: &Polynomial, count: usize) -> bool {
    let degs: Vec<u32> = p.terms().iter().map(|(m, _)| m.exponents()[..count].iter().sum()).collect();
    degs.windows(2).all(|w| w[0] == w[1])
}
