use std::cmp::Ordering;
use std::fmt;

/// Exponent vector of a monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| a.max(b)).collect())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Lex,
    Grevlex,
    /// The first `block` variables of the priority list are compared first
    /// (grevlex among themselves), then the rest (grevlex).
    Elimination { block: usize },
    /// Weighted degree first (weights indexed by variable), then reverse
    /// lexicographic along the priority list.
    WeightedGrevlex(Vec<u64>),
}

/// A monomial order given by a kind and a variable priority list, most
/// significant variable first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TermOrder {
    kind: OrderKind,
    priority: Vec<usize>,
}

/// The order choices exposed to callers; every ring gets the natural
/// priority `x0 > x1 > ... > h`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum OrderChoice {
    Lex,
    #[default]
    Grevlex,
}

impl OrderChoice {
    pub fn order(self, nvars: usize) -> TermOrder {
        match self {
            OrderChoice::Lex => TermOrder::lex(nvars),
            OrderChoice::Grevlex => TermOrder::grevlex(nvars),
        }
    }
}

impl fmt::Display for OrderChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderChoice::Lex => "lex",
            OrderChoice::Grevlex => "grevlex",
        })
    }
}

fn revlex_tail(a: &[u32], b: &[u32], vars: &[usize]) -> Ordering {
    for &v in vars.iter().rev() {
        if a[v] != b[v] {
            return b[v].cmp(&a[v]);
        }
    }
    Ordering::Equal
}

fn grevlex_cmp(a: &[u32], b: &[u32], vars: &[usize]) -> Ordering {
    let da: u64 = vars.iter().map(|&v| a[v] as u64).sum();
    let db: u64 = vars.iter().map(|&v| b[v] as u64).sum();
    da.cmp(&db).then_with(|| revlex_tail(a, b, vars))
}

impl TermOrder {
    pub fn lex(nvars: usize) -> Self {
        TermOrder { kind: OrderKind::Lex, priority: (0..nvars).collect() }
    }

    pub fn grevlex(nvars: usize) -> Self {
        TermOrder { kind: OrderKind::Grevlex, priority: (0..nvars).collect() }
    }

    /// Panics unless `priority` is a permutation of `0..priority.len()`.
    pub fn with_priority(kind: OrderKind, priority: Vec<usize>) -> Self {
        let mut seen = vec![false; priority.len()];
        for &v in &priority {
            assert!(v < seen.len() && !seen[v], "priority must be a permutation");
            seen[v] = true;
        }
        match &kind {
            OrderKind::Elimination { block } => assert!(*block <= priority.len(), "elimination block larger than ring"),
            OrderKind::WeightedGrevlex(w) => assert!(w.len() == priority.len() && w.iter().all(|&x| x > 0), "weights must be positive, one per variable"),
            _ => {}
        }
        TermOrder { kind, priority }
    }

    /// An order eliminating `vars`, with `base` deciding ties on the rest.
    pub fn eliminating(vars: &[usize], base: &TermOrder) -> Self {
        let mut priority: Vec<usize> = vars.to_vec();
        priority.extend(base.priority.iter().copied().filter(|v| !vars.contains(v)));
        let kind = match base.kind {
            OrderKind::Lex => OrderKind::Lex,
            _ => OrderKind::Elimination { block: vars.len() },
        };
        TermOrder { kind, priority }
    }

    pub fn kind(&self) -> &OrderKind {
        &self.kind
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    pub fn nvars(&self) -> usize {
        self.priority.len()
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::Lex => {
                for &v in &self.priority {
                    if a.0[v] != b.0[v] {
                        return a.0[v].cmp(&b.0[v]);
                    }
                }
                Ordering::Equal
            }
            OrderKind::Grevlex => grevlex_cmp(&a.0, &b.0, &self.priority),
            OrderKind::WeightedGrevlex(ref w) => {
                let deg = |e: &[u32]| e.iter().zip(w).map(|(&x, &wt)| u128::from(x) * u128::from(wt)).sum::<u128>();
                deg(&a.0).cmp(&deg(&b.0)).then_with(|| revlex_tail(&a.0, &b.0, &self.priority))
            }
            OrderKind::Elimination { block } => {
                let (head, tail) = self.priority.split_at(block);
                grevlex_cmp(&a.0, &b.0, head).then_with(|| grevlex_cmp(&a.0, &b.0, tail))
            }
        }
    }

    /// The same order on the ring with variable `var` removed.
    pub fn without_variable(&self, var: usize) -> TermOrder {
        let pos = self.priority.iter().position(|&v| v == var).expect("variable in order");
        let priority = self.priority.iter().filter(|&&v| v != var).map(|&v| if v > var { v - 1 } else { v }).collect();
        let kind = match self.kind {
            OrderKind::Elimination { block } => {
                let block = if pos < block { block - 1 } else { block };
                if block == 0 || block == self.priority.len() - 1 {
                    OrderKind::Grevlex
                } else {
                    OrderKind::Elimination { block }
                }
            }
            OrderKind::WeightedGrevlex(ref w) => {
                OrderKind::WeightedGrevlex(w.iter().enumerate().filter(|&(v, _)| v != var).map(|(_, &x)| x).collect())
            }
            ref k => k.clone(),
        };
        TermOrder { kind, priority }
    }

    /// The same order on the first `nvars` variables.
    pub fn restricted_to(&self, nvars: usize) -> TermOrder {
        let mut o = self.clone();
        for v in (nvars..self.nvars()).rev() {
            o = o.without_variable(v);
        }
        o
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial(e.to_vec())
    }

    #[test]
    fn grevlex_basics() {
        let o = TermOrder::grevlex(4);
        // x1^2 > x0*x2 in grevlex
        assert_eq!(o.cmp(&m(&[0, 2, 0, 0]), &m(&[1, 0, 1, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 0, 0, 3]), &m(&[1, 1, 0, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 0, 0, 0]), &m(&[0, 1, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn lex_and_elimination() {
        let lex = TermOrder::lex(3);
        assert_eq!(lex.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
        let elim = TermOrder::eliminating(&[2], &TermOrder::grevlex(3));
        assert_eq!(elim.cmp(&m(&[0, 0, 1]), &m(&[4, 4, 0])), Ordering::Greater);
        assert_eq!(elim.cmp(&m(&[2, 0, 1]), &m(&[0, 1, 1])), Ordering::Greater);
        let lex_elim = TermOrder::eliminating(&[2], &lex);
        assert_eq!(lex_elim.priority(), &[2, 0, 1]);
    }

    #[test]
    fn weighted_grevlex() {
        let o = TermOrder::with_priority(OrderKind::WeightedGrevlex(vec![1, 1, 3]), vec![0, 1, 2]);
        assert_eq!(o.cmp(&m(&[0, 0, 1]), &m(&[2, 0, 0])), Ordering::Greater);
        // equal weight 3: the last variable breaks the tie downward
        assert_eq!(o.cmp(&m(&[0, 0, 1]), &m(&[2, 1, 0])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[1, 2, 0]), &m(&[2, 1, 0])), Ordering::Less);
        let r = o.without_variable(0);
        assert_eq!(r, TermOrder::with_priority(OrderKind::WeightedGrevlex(vec![1, 3]), vec![0, 1]));
    }

    #[test]
    fn dropping_variables() {
        let elim = TermOrder::eliminating(&[3], &TermOrder::grevlex(4));
        let r = elim.without_variable(3);
        assert_eq!(r, TermOrder::grevlex(3));
        assert_eq!(TermOrder::grevlex(5).without_variable(1), TermOrder::with_priority(OrderKind::Grevlex, vec![0, 1, 2, 3]));
        assert_eq!(TermOrder::lex(5).restricted_to(3), TermOrder::lex(3));
    }

    #[test]
    fn monomial_ops() {
        let a = m(&[1, 0, 2]);
        let b = m(&[0, 3, 1]);
        assert_eq!(a.lcm(&b), m(&[1, 3, 2]));
        assert!(!a.is_coprime(&b));
        assert!(m(&[1, 0, 0]).is_coprime(&m(&[0, 2, 0])));
        assert!(m(&[0, 0, 1]).divides(&a));
        assert_eq!(a.mul(&b).div(&b), a);
    }
}
