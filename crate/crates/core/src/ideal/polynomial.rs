use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::monomial::{Monomial, TermOrder};
use crate::error::IdealError;
use crate::exact_linalg::{Int, Rat};

/// Variable names of a polynomial ring, with the position of the
/// degeneration parameter if present.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    names: Vec<String>,
    eta: Option<usize>,
}

pub const ETA_NAME: &str = "h";

impl Ring {
    /// `x0, ..., x{count-1}`.
    pub fn projective(count: usize) -> Arc<Ring> {
        Arc::new(Ring { names: (0..count).map(|i| format!("x{i}")).collect(), eta: None })
    }

    /// `x0, ..., x{count-1}, h`.
    pub fn with_eta(count: usize) -> Arc<Ring> {
        let mut names: Vec<String> = (0..count).map(|i| format!("x{i}")).collect();
        names.push(ETA_NAME.to_string());
        Arc::new(Ring { names, eta: Some(count) })
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn eta(&self) -> Option<usize> {
        self.eta
    }

    /// Number of homogeneous coordinates, i.e. all variables except `h`
    /// and auxiliary ones appended after it.
    pub fn x_count(&self) -> usize {
        self.eta.unwrap_or(self.names.len())
    }

    pub(crate) fn with_extra(&self, name: &str) -> Arc<Ring> {
        let mut names = self.names.clone();
        names.push(name.to_string());
        Arc::new(Ring { names, eta: self.eta })
    }

    pub(crate) fn without(&self, var: usize) -> Arc<Ring> {
        let names = self.names.iter().enumerate().filter(|(i, _)| *i != var).map(|(_, n)| n.clone()).collect();
        let eta = match self.eta {
            Some(e) if e == var => None,
            Some(e) if e > var => Some(e - 1),
            e => e,
        };
        Arc::new(Ring { names, eta })
    }

    fn lookup(&self, name: &str) -> Option<usize> {
        if name == "η" {
            return self.eta;
        }
        self.names.iter().position(|n| n == name)
    }
}

pub type Term = (Monomial, Rat);

/// `p - c * m * q` for term lists sorted decreasingly under `order`.
pub(crate) fn sub_mul(p: &[Term], c: &Rat, m: &Monomial, q: &[Term], order: &TermOrder) -> Vec<Term> {
    let mut out = Vec::with_capacity(p.len() + q.len());
    let mut i = 0;
    let mut qs = q.iter().map(|(mq, cq)| (mq.mul(m), cq * c)).peekable();
    while i < p.len() || qs.peek().is_some() {
        let next = match (p.get(i), qs.peek()) {
            (Some(a), Some(b)) => order.cmp(&a.0, &b.0),
            (Some(_), None) => Ordering::Greater,
            (None, _) => Ordering::Less,
        };
        match next {
            Ordering::Greater => {
                out.push(p[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let (mb, cb) = qs.next().unwrap();
                out.push((mb, -cb));
            }
            Ordering::Equal => {
                let (mb, cb) = qs.next().unwrap();
                let v = &p[i].1 - cb;
                if !v.is_zero() {
                    out.push((mb, v));
                }
                i += 1;
            }
        }
    }
    out
}

pub(crate) fn make_monic(terms: &mut [Term]) {
    if let Some(lc) = terms.first().map(|t| t.1.clone()) {
        if !lc.is_one() {
            for t in terms.iter_mut() {
                t.1 = &t.1 / &lc;
            }
        }
    }
}

/// A polynomial with rational coefficients, terms sorted strictly
/// decreasingly under its term order.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Arc<Ring>,
    order: TermOrder,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.order == other.order && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    /// Collects like terms, drops zeros and sorts.
    pub fn new(ring: Arc<Ring>, order: TermOrder, terms: Vec<Term>) -> Self {
        let mut terms = terms;
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        Polynomial { ring, order, terms: out }
    }

    pub(crate) fn from_sorted(ring: Arc<Ring>, order: TermOrder, terms: Vec<Term>) -> Self {
        Polynomial { ring, order, terms }
    }

    pub fn zero(ring: Arc<Ring>, order: TermOrder) -> Self {
        Polynomial { ring, order, terms: Vec::new() }
    }

    pub fn monomial(ring: Arc<Ring>, order: TermOrder, m: Monomial, c: Rat) -> Self {
        Self::new(ring, order, vec![(m, c)])
    }

    /// `x^plus - x^minus`.
    pub fn binomial(ring: Arc<Ring>, order: TermOrder, plus: Monomial, minus: Monomial) -> Self {
        Self::new(ring, order, vec![(plus, Rat::one()), (minus, -Rat::one())])
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub(crate) fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coefficient(&self) -> Option<&Rat> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn monic(mut self) -> Self {
        make_monic(&mut self.terms);
        self
    }

    pub fn with_order(&self, order: &TermOrder) -> Polynomial {
        Polynomial::new(self.ring.clone(), order.clone(), self.terms.clone())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial::from_sorted(self.ring.clone(), self.order.clone(), self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect())
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let one = Monomial::one(self.ring.nvars());
        let negated: Vec<Term> = other.with_order(&self.order).terms.into_iter().map(|(m, c)| (m, -c)).collect();
        Polynomial::from_sorted(self.ring.clone(), self.order.clone(), sub_mul(&self.terms, &Rat::one(), &one, &negated, &self.order))
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                terms.push((ma.mul(mb), ca * cb));
            }
        }
        Polynomial::new(self.ring.clone(), self.order.clone(), terms)
    }

    /// Exactly two terms with coefficients `1` and `-1`.
    pub fn is_unit_binomial(&self) -> bool {
        let one = Rat::one();
        match self.terms.as_slice() {
            [(_, a), (_, b)] => (*a == one && *b == -one.clone()) || (*a == -one.clone() && *b == one),
            _ => false,
        }
    }

    /// All terms have the same total degree in the first `count` variables.
    pub fn is_homogeneous_in(&self, count: usize) -> bool {
        let deg = |m: &Monomial| m.0[..count].iter().map(|&e| e as u64).sum::<u64>();
        self.terms.windows(2).all(|w| deg(&w[0].0) == deg(&w[1].0))
    }

    /// Whether variable `var` occurs in any term.
    pub fn involves(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.0[var] != 0)
    }

    /// Substitutes `var := value` and drops the variable from the ring.
    pub fn substitute_and_drop(&self, var: usize, value: &Rat, order: &TermOrder) -> Polynomial {
        let ring = self.ring.without(var);
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let e = m.0[var];
                let factor = if e == 0 { Rat::one() } else { num_traits::pow(value.clone(), e as usize) };
                if factor.is_zero() {
                    return None;
                }
                let mut exps = m.0.clone();
                exps.remove(var);
                Some((Monomial(exps), c * factor))
            })
            .collect();
        Polynomial::new(ring, order.clone(), terms)
    }

    /// Parses text such as `x0^2*x3*h - 2*x1 + 3`.
    pub fn parse(ring: Arc<Ring>, order: TermOrder, text: &str) -> Result<Polynomial, IdealError> {
        Parser { src: text, pos: 0, ring: &ring }.polynomial().map(|terms| Polynomial::new(ring.clone(), order, terms))
    }
}

fn fmt_monomial(f: &mut fmt::Formatter<'_>, ring: &Ring, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(&ring.names[i])?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if m.is_one() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                fmt_monomial(f, &self.ring, m)?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    ring: &'a Ring,
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> IdealError {
        IdealError::Parse { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<Int, IdealError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.src[start..self.pos].parse().map_err(|_| self.err("expected an integer"))
    }

    fn polynomial(&mut self) -> Result<Vec<Term>, IdealError> {
        let mut terms = Vec::new();
        let mut negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        loop {
            let (m, c) = self.term()?;
            terms.push((m, if negative { -c } else { c }));
            if self.eat('+') {
                negative = false;
            } else if self.eat('-') {
                negative = true;
            } else {
                break;
            }
        }
        self.skip_ws();
        if self.pos != self.src.len() {
            return Err(self.err("unexpected trailing input"));
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<Term, IdealError> {
        let mut exps = vec![0u32; self.ring.nvars()];
        let mut coeff = Rat::one();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let num = self.integer()?;
                    let den = if self.eat('/') { self.integer()? } else { Int::one() };
                    if den.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    coeff *= Rat::new(num, den);
                }
                Some(c) if c.is_alphabetic() => {
                    let start = self.pos;
                    while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_') {
                        self.pos += self.peek().unwrap().len_utf8();
                    }
                    let name = &self.src[start..self.pos];
                    let var = self.ring.lookup(name).ok_or_else(|| IdealError::Parse { pos: start, msg: format!("unknown variable {name}") })?;
                    let e = if self.eat('^') {
                        let e = self.integer()?;
                        e.to_u32().ok_or_else(|| IdealError::ExponentOverflow(e.to_string()))?
                    } else {
                        1
                    };
                    exps[var] += e;
                }
                _ => return Err(self.err("expected a coefficient or variable")),
            }
            if !self.eat('*') {
                break;
            }
        }
        Ok((Monomial(exps), coeff))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(ring: &Arc<Ring>, s: &str) -> Polynomial {
        Polynomial::parse(ring.clone(), TermOrder::grevlex(ring.nvars()), s).unwrap()
    }

    #[test]
    fn print_and_parse() {
        let r = Ring::with_eta(4);
        let p = parse(&r, "x0*x2 - h*x1^2");
        assert_eq!(p.to_string(), "-x1^2*h + x0*x2");
        assert_eq!(parse(&r, &p.to_string()), p);
        let q = parse(&r, "3 - 2*x1 + x0^2*x3*η + 1/2*x2");
        assert_eq!(q.to_string(), "x0^2*x3*h - 2*x1 + 1/2*x2 + 3");
        assert_eq!(parse(&r, &q.to_string()), q);
        assert_eq!(parse(&r, "x1 - x1").to_string(), "0");
        assert!(parse(&r, "0").is_zero());
    }

    #[test]
    fn parse_errors() {
        let r = Ring::projective(2);
        let o = TermOrder::grevlex(2);
        assert!(matches!(Polynomial::parse(r.clone(), o.clone(), "x0 + y"), Err(IdealError::Parse { .. })));
        assert!(matches!(Polynomial::parse(r.clone(), o.clone(), "x0 +"), Err(IdealError::Parse { .. })));
        assert!(matches!(Polynomial::parse(r, o, "x0 x1"), Err(IdealError::Parse { .. })));
    }

    #[test]
    fn arithmetic() {
        let r = Ring::projective(2);
        let a = parse(&r, "x0");
        let b = parse(&r, "x0 - x1");
        assert_eq!(a.mul(&b), parse(&r, "x0^2 - x0*x1"));
        assert_eq!(a.sub(&b), parse(&r, "x1"));
        assert!(b.is_unit_binomial());
        assert!(!a.mul(&b).add(&a).is_unit_binomial());
    }

    #[test]
    fn substitution() {
        let r = Ring::with_eta(3);
        let p = parse(&r, "x0*x2 - h*x1^2");
        let o = TermOrder::grevlex(3);
        assert_eq!(p.substitute_and_drop(3, &Rat::zero(), &o).to_string(), "x0*x2");
        assert_eq!(p.substitute_and_drop(3, &Rat::one(), &o).to_string(), "-x1^2 + x0*x2");
    }
}
