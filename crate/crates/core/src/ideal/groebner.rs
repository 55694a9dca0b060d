//! Buchberger completion to a reduced Gröbner basis.
//!
//! Pairs are selected by the normal strategy (smallest lcm first) and
//! filtered with Buchberger's coprime and chain criteria. In batch mode all
//! pending pairs of the smallest lcm degree are reduced at once, in parallel
//! when the `parallel` feature is enabled. The reduced basis is unique, so
//! both modes return identical output.

use std::collections::HashSet;
use std::sync::Arc;

use num_traits::One;

use super::binomial::{as_binomial, binomial_gb, to_terms};
use super::monomial::{Monomial, TermOrder};
use super::polynomial::{make_monic, sub_mul, Polynomial, Ring, Term};
use crate::error::IdealError;
use crate::exact_linalg::Rat;
use crate::par;

/// A reduced Gröbner basis together with its ring and term order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealGB {
    ring: Arc<Ring>,
    order: TermOrder,
    basis: Vec<Polynomial>,
}

impl IdealGB {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    /// Basis elements, monic, sorted by increasing leading monomial.
    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Normal form of `f` modulo the basis.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial, IdealError> {
        if f.ring() != &self.ring {
            return Err(IdealError::RingMismatch(format!("{:?} vs {:?}", f.ring().names(), self.ring.names())));
        }
        let g: Vec<&[Term]> = self.basis.iter().map(|p| p.terms()).collect();
        let terms = f.with_order(&self.order).into_terms();
        Ok(Polynomial::from_sorted(self.ring.clone(), self.order.clone(), normal_form(terms, &g, &self.order)))
    }

    /// The same ideal under another order.
    pub fn reorder(&self, order: &TermOrder) -> IdealGB {
        if *order == self.order {
            return self.clone();
        }
        buchberger_on(self.ring.clone(), order, self.basis.iter().map(|p| p.with_order(order).into_terms()).collect(), Strategy::default())
    }
}

/// Full reduction of `p` by a list of monic polynomials.
pub(crate) fn normal_form(mut p: Vec<Term>, basis: &[&[Term]], order: &TermOrder) -> Vec<Term> {
    let mut rem = Vec::new();
    while !p.is_empty() {
        let lm = &p[0].0;
        match basis.iter().find(|g| g[0].0.divides(lm)) {
            Some(g) => {
                let m = lm.div(&g[0].0);
                let c = p[0].1.clone();
                p = sub_mul(&p, &c, &m, g, order);
            }
            None => rem.push(p.remove(0)),
        }
    }
    rem
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// One pair at a time.
    Sequential,
    /// All pairs of minimal lcm degree per round, reduced in parallel when
    /// the `parallel` feature is on.
    Batched,
}

impl Default for Strategy {
    fn default() -> Self {
        if par::is_parallel() {
            Strategy::Batched
        } else {
            Strategy::Sequential
        }
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Engine<'a> {
    order: &'a TermOrder,
    basis: Vec<Vec<Term>>,
    pending: Vec<Pair>,
    pending_set: HashSet<(usize, usize)>,
    sorted: bool,
}

impl<'a> Engine<'a> {
    fn lm(&self, i: usize) -> &Monomial {
        &self.basis[i][0].0
    }

    fn add(&mut self, mut p: Vec<Term>) {
        make_monic(&mut p);
        let k = self.basis.len();
        let lm = p[0].0.clone();
        self.basis.push(p);
        for i in 0..k {
            let lcm = self.lm(i).lcm(&lm);
            self.pending.push(Pair { i, j: k, lcm });
            self.pending_set.insert((i, k));
        }
        self.sorted = false;
    }

    fn reduce(&self, p: Vec<Term>) -> Vec<Term> {
        let g: Vec<&[Term]> = self.basis.iter().map(Vec::as_slice).collect();
        normal_form(p, &g, self.order)
    }

    fn s_poly(&self, pair: &Pair) -> Vec<Term> {
        let (gi, gj) = (&self.basis[pair.i], &self.basis[pair.j]);
        let mi = pair.lcm.div(&gi[0].0);
        let mj = pair.lcm.div(&gj[0].0);
        let lifted: Vec<Term> = gi.iter().map(|(m, c)| (m.mul(&mi), c.clone())).collect();
        sub_mul(&lifted, &Rat::one(), &mj, gj, self.order)
    }

    fn is_pending(&self, a: usize, b: usize) -> bool {
        self.pending_set.contains(&(a.min(b), a.max(b)))
    }

    /// Buchberger's chain criterion.
    fn chain_redundant(&self, pair: &Pair) -> bool {
        (0..self.basis.len()).any(|k| {
            k != pair.i
                && k != pair.j
                && self.lm(k).divides(&pair.lcm)
                && !self.is_pending(pair.i, k)
                && !self.is_pending(pair.j, k)
        })
    }

    /// Removes and returns the next batch of pairs, in a deterministic order.
    fn take_batch(&mut self, strategy: Strategy) -> Vec<Pair> {
        if !self.sorted {
            let order = self.order;
            self.pending.sort_by(|a, b| order.cmp(&b.lcm, &a.lcm).then((b.i, b.j).cmp(&(a.i, a.j))));
            self.sorted = true;
        }
        let mut batch = vec![self.pending.pop().unwrap()];
        if strategy == Strategy::Batched {
            let deg = batch[0].lcm.degree();
            while self.pending.last().is_some_and(|p| p.lcm.degree() == deg) {
                batch.push(self.pending.pop().unwrap());
            }
        }
        batch
    }

    fn run(&mut self, strategy: Strategy) {
        while !self.pending.is_empty() {
            let batch = self.take_batch(strategy);
            let mut live = Vec::with_capacity(batch.len());
            for pair in batch {
                self.pending_set.remove(&(pair.i, pair.j));
                if self.lm(pair.i).is_coprime(self.lm(pair.j)) || self.chain_redundant(&pair) {
                    continue;
                }
                live.push(pair);
            }
            let reduced: Vec<Vec<Term>> = if live.len() > 1 {
                par::map(&live, |p| self.reduce(self.s_poly(p)))
            } else {
                live.iter().map(|p| self.reduce(self.s_poly(p))).collect()
            };
            for r in reduced {
                if r.is_empty() {
                    continue;
                }
                // earlier members of the batch may have been added since
                let r = self.reduce(r);
                if !r.is_empty() {
                    self.add(r);
                }
            }
        }
    }

    fn finish(self) -> Vec<Vec<Term>> {
        let order = self.order;
        let basis = self.basis;
        let mut keep: Vec<usize> = Vec::new();
        for i in 0..basis.len() {
            let lm = &basis[i][0].0;
            let redundant = (0..basis.len()).any(|j| j != i && basis[j][0].0.divides(lm) && (basis[j][0].0 != *lm || j < i));
            if !redundant {
                keep.push(i);
            }
        }
        let minimal: Vec<&Vec<Term>> = keep.iter().map(|&i| &basis[i]).collect();
        let mut out: Vec<Vec<Term>> = (0..minimal.len())
            .map(|i| {
                let others: Vec<&[Term]> = (0..minimal.len()).filter(|&j| j != i).map(|j| minimal[j].as_slice()).collect();
                let head = minimal[i][0].clone();
                let mut terms = vec![head];
                terms.extend(normal_form(minimal[i][1..].to_vec(), &others, order));
                terms
            })
            .collect();
        out.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
        out
    }
}

pub(crate) fn buchberger_on(ring: Arc<Ring>, order: &TermOrder, generators: Vec<Vec<Term>>, strategy: Strategy) -> IdealGB {
    let generators: Vec<Vec<Term>> = generators.into_iter().filter(|g| !g.is_empty()).collect();
    if let Some(binomials) = generators.iter().map(|g| as_binomial(g)).collect::<Option<Vec<_>>>() {
        let basis = binomial_gb(order, binomials, strategy)
            .iter()
            .map(|b| Polynomial::from_sorted(ring.clone(), order.clone(), to_terms(b)))
            .collect();
        return IdealGB { ring, order: order.clone(), basis };
    }
    buchberger_general(ring, order, generators, strategy)
}

fn buchberger_general(ring: Arc<Ring>, order: &TermOrder, generators: Vec<Vec<Term>>, strategy: Strategy) -> IdealGB {
    let mut engine = Engine { order, basis: Vec::new(), pending: Vec::new(), pending_set: HashSet::new(), sorted: true };
    for g in generators {
        let r = engine.reduce(g);
        if !r.is_empty() {
            engine.add(r);
        }
    }
    engine.run(strategy);
    let basis = engine
        .finish()
        .into_iter()
        .map(|t| Polynomial::from_sorted(ring.clone(), order.clone(), t))
        .collect();
    IdealGB { ring, order: order.clone(), basis }
}

/// The reduced Gröbner basis of the ideal generated by `generators`.
///
/// All generators must live in `ring`; zero generators are ignored, and an
/// empty list gives the zero ideal.
pub fn buchberger(ring: &Arc<Ring>, generators: &[Polynomial], order: &TermOrder) -> Result<IdealGB, IdealError> {
    buchberger_with(ring, generators, order, Strategy::default())
}

pub fn buchberger_with(ring: &Arc<Ring>, generators: &[Polynomial], order: &TermOrder, strategy: Strategy) -> Result<IdealGB, IdealError> {
    if let Some(g) = generators.iter().find(|g| g.ring() != ring) {
        return Err(IdealError::RingMismatch(format!("{:?} vs {:?}", g.ring().names(), ring.names())));
    }
    let gens = generators.iter().map(|g| g.with_order(order).into_terms()).collect();
    Ok(buchberger_on(ring.clone(), order, gens, strategy))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse_all(ring: &Arc<Ring>, order: &TermOrder, src: &[&str]) -> Vec<Polynomial> {
        src.iter().map(|s| Polynomial::parse(ring.clone(), order.clone(), s).unwrap()).collect()
    }

    fn gb(ring: &Arc<Ring>, order: &TermOrder, src: &[&str]) -> Vec<String> {
        buchberger(ring, &parse_all(ring, order, src), order).unwrap().basis().iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn principal_ideal_is_its_own_basis() {
        let r = Ring::projective(2);
        let o = TermOrder::grevlex(2);
        assert_eq!(gb(&r, &o, &["x0 - x1"]), vec!["x0 - x1"]);
        assert_eq!(gb(&r, &o, &["2*x0 - 2*x1"]), vec!["x0 - x1"]);
    }

    #[test]
    fn coprime_leading_terms() {
        let r = Ring::projective(4);
        let o = TermOrder::grevlex(4);
        // leading terms x1^2 and x2^2 are coprime, so nothing is added;
        // x1x2 - x0x3 only appears after saturation
        let basis = gb(&r, &o, &["x0*x2 - x1^2", "x1*x3 - x2^2"]);
        assert_eq!(basis, vec!["x2^2 - x1*x3", "x1^2 - x0*x2"]);
    }

    #[test]
    fn twisted_cubic_full_ideal() {
        let r = Ring::projective(4);
        let o = TermOrder::grevlex(4);
        let basis = gb(&r, &o, &["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"]);
        assert_eq!(basis, vec!["x2^2 - x1*x3", "x1*x2 - x0*x3", "x1^2 - x0*x2"]);
    }

    #[test]
    fn strategies_agree() {
        let r = Ring::projective(5);
        for o in [TermOrder::grevlex(5), TermOrder::lex(5)] {
            let gens = parse_all(&r, &o, &["x0*x3 - x1^2", "x1*x4 - x2*x3", "x0^2*x4 - x2^3", "x2*x4 - x3^2 + x0"]);
            let a = buchberger_with(&r, &gens, &o, Strategy::Sequential).unwrap();
            let b = buchberger_with(&r, &gens, &o, Strategy::Batched).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn binomial_engine_matches_the_general_one() {
        let r = Ring::with_eta(6);
        let src = ["x0*x2 - x1^2*h", "x2*x4 - x3^2", "x1*x5 - x3*x4*h^2", "x0*x5^2 - x2^2*x4", "x3^3 - x0*x4*x5"];
        for o in [TermOrder::grevlex(7), TermOrder::lex(7), TermOrder::with_priority(super::super::monomial::OrderKind::WeightedGrevlex(vec![1, 2, 3, 1, 2, 3, 1]), (0..7).rev().collect())] {
            let gens: Vec<Vec<Term>> = parse_all(&r, &o, &src).into_iter().map(Polynomial::into_terms).collect();
            for s in [Strategy::Sequential, Strategy::Batched] {
                let fast = buchberger_on(r.clone(), &o, gens.clone(), s);
                let slow = buchberger_general(r.clone(), &o, gens.clone(), s);
                assert_eq!(fast, slow, "{o:?}");
            }
        }
    }

    #[test]
    fn lex_elimination_of_parametrization() {
        // x = t^2, y = t^3 in Q[t, x, y] with t first under lex
        let r = Ring::projective(3);
        let o = TermOrder::lex(3);
        let basis = gb(&r, &o, &["x0^2 - x1", "x0^3 - x2"]);
        assert!(basis.contains(&"x1^3 - x2^2".to_string()), "{basis:?}");
    }

    #[test]
    fn zero_ideal_and_ring_mismatch() {
        let r = Ring::projective(2);
        let o = TermOrder::grevlex(2);
        assert!(buchberger(&r, &[], &o).unwrap().is_zero());
        let other = Ring::projective(3);
        let g = parse_all(&other, &TermOrder::grevlex(3), &["x0"]);
        assert!(buchberger(&r, &g, &o).is_err());
    }

    #[test]
    fn normal_form_membership() {
        let r = Ring::projective(4);
        let o = TermOrder::grevlex(4);
        let i = buchberger(&r, &parse_all(&r, &o, &["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"]), &o).unwrap();
        let f = Polynomial::parse(r.clone(), o.clone(), "x0*x3 - x1*x2").unwrap();
        assert!(i.normal_form(&f).unwrap().is_zero());
        let g = Polynomial::parse(r.clone(), o.clone(), "x0 - x1").unwrap();
        assert_eq!(i.normal_form(&g).unwrap(), g);
    }
}
