//! Buchberger completion specialised to pure difference binomials
//! `x^a - x^b`.
//!
//! S-pairs and reductions of such binomials stay pure difference binomials,
//! and the normal form of a monomial is again a monomial, so the whole
//! computation runs on exponent vectors without coefficient arithmetic.
//! Pair selection and criteria mirror the general engine.

use std::collections::HashSet;

use num_traits::{One, Zero};

use super::groebner::Strategy;
use super::monomial::{Monomial, TermOrder};
use super::polynomial::Term;
use crate::exact_linalg::Rat;
use crate::par;

/// `lead - tail` with `lead > tail`.
pub(crate) type Binomial = (Monomial, Monomial);

/// Reads `p` as a pure difference binomial, after scaling to monic.
pub(crate) fn as_binomial(p: &[Term]) -> Option<Binomial> {
    match p {
        [(a, ca), (b, cb)] if !ca.is_zero() && (ca + cb).is_zero() => Some((a.clone(), b.clone())),
        _ => None,
    }
}

pub(crate) fn to_terms(b: &Binomial) -> Vec<Term> {
    vec![(b.0.clone(), Rat::one()), (b.1.clone(), -Rat::one())]
}

pub(crate) fn orient(a: Monomial, b: Monomial, order: &TermOrder) -> Option<Binomial> {
    match order.cmp(&a, &b) {
        std::cmp::Ordering::Greater => Some((a, b)),
        std::cmp::Ordering::Less => Some((b, a)),
        std::cmp::Ordering::Equal => None,
    }
}

fn monomial_nf(mut m: Monomial, basis: &[Binomial]) -> Monomial {
    while let Some(g) = basis.iter().find(|g| g.0.divides(&m)) {
        m = m.div(&g.0).mul(&g.1);
    }
    m
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Engine<'a> {
    order: &'a TermOrder,
    basis: Vec<Binomial>,
    pending: Vec<Pair>,
    pending_set: HashSet<(usize, usize)>,
    sorted: bool,
}

impl Engine<'_> {
    fn reduce(&self, b: Binomial) -> Option<Binomial> {
        orient(monomial_nf(b.0, &self.basis), monomial_nf(b.1, &self.basis), self.order)
    }

    fn add(&mut self, b: Binomial) {
        let k = self.basis.len();
        for i in 0..k {
            let lcm = self.basis[i].0.lcm(&b.0);
            self.pending.push(Pair { i, j: k, lcm });
            self.pending_set.insert((i, k));
        }
        self.sorted = false;
        self.basis.push(b);
    }

    fn s_pair(&self, p: &Pair) -> Option<Binomial> {
        let (gi, gj) = (&self.basis[p.i], &self.basis[p.j]);
        let a = p.lcm.div(&gi.0).mul(&gi.1);
        let b = p.lcm.div(&gj.0).mul(&gj.1);
        self.reduce((a, b))
    }

    fn is_pending(&self, a: usize, b: usize) -> bool {
        self.pending_set.contains(&(a.min(b), a.max(b)))
    }

    fn chain_redundant(&self, p: &Pair) -> bool {
        (0..self.basis.len()).any(|k| {
            k != p.i && k != p.j && self.basis[k].0.divides(&p.lcm) && !self.is_pending(p.i, k) && !self.is_pending(p.j, k)
        })
    }

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
                if !self.basis[pair.i].0.is_coprime(&self.basis[pair.j].0) && !self.chain_redundant(&pair) {
                    live.push(pair);
                }
            }
            let reduced: Vec<Option<Binomial>> =
                if live.len() > 1 { par::map(&live, |p| self.s_pair(p)) } else { live.iter().map(|p| self.s_pair(p)).collect() };
            for r in reduced.into_iter().flatten() {
                if let Some(r) = self.reduce(r) {
                    self.add(r);
                }
            }
        }
    }

    fn finish(self) -> Vec<Binomial> {
        let basis = self.basis;
        let leads: Vec<Binomial> = basis
            .iter()
            .enumerate()
            .filter(|&(i, b)| !basis.iter().enumerate().any(|(j, c)| j != i && c.0.divides(&b.0) && (c.0 != b.0 || j < i)))
            .map(|(_, b)| b.clone())
            .collect();
        let mut out: Vec<Binomial> = (0..leads.len())
            .map(|i| {
                let others: Vec<Binomial> = leads.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, b)| b.clone()).collect();
                (leads[i].0.clone(), monomial_nf(leads[i].1.clone(), &others))
            })
            .collect();
        let order = self.order;
        out.sort_by(|a, b| order.cmp(&a.0, &b.0));
        out
    }
}

/// Reduced Gröbner basis of the ideal generated by `generators`, sorted by
/// increasing leading monomial.
pub(crate) fn binomial_gb(order: &TermOrder, generators: Vec<Binomial>, strategy: Strategy) -> Vec<Binomial> {
    let mut engine = Engine { order, basis: Vec::new(), pending: Vec::new(), pending_set: HashSet::new(), sorted: true };
    for (a, b) in generators {
        if let Some(r) = orient(a, b, order).and_then(|g| engine.reduce(g)) {
            engine.add(r);
        }
    }
    engine.run(strategy);
    engine.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial(e.to_vec())
    }

    #[test]
    fn twisted_cubic() {
        let o = TermOrder::grevlex(4);
        let gb = binomial_gb(&o, vec![(m(&[1, 0, 1, 0]), m(&[0, 2, 0, 0])), (m(&[0, 1, 0, 1]), m(&[0, 0, 2, 0])), (m(&[1, 0, 0, 1]), m(&[0, 1, 1, 0]))], Strategy::Sequential);
        assert_eq!(gb, vec![(m(&[0, 0, 2, 0]), m(&[0, 1, 0, 1])), (m(&[0, 1, 1, 0]), m(&[1, 0, 0, 1])), (m(&[0, 2, 0, 0]), m(&[1, 0, 1, 0]))]);
    }

    #[test]
    fn recognises_pure_differences() {
        let one = Rat::one();
        assert!(as_binomial(&[(m(&[1]), one.clone()), (m(&[0]), -one.clone())]).is_some());
        assert!(as_binomial(&[(m(&[1]), one.clone()), (m(&[0]), one.clone())]).is_none());
        assert!(as_binomial(&[(m(&[1]), one)]).is_none());
    }

    #[test]
    fn trivial_binomials_vanish() {
        let o = TermOrder::lex(2);
        assert!(binomial_gb(&o, vec![(m(&[1, 1]), m(&[1, 1]))], Strategy::Batched).is_empty());
    }
}
