//! Lattice ideals, saturation, toric and degeneration ideals, and the
//! symbolic checks run against monomial parametrizations.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::groebner::{buchberger_on, IdealGB, Strategy};
use super::monomial::{Monomial, OrderChoice, OrderKind, TermOrder};
use super::polynomial::{Polynomial, Ring, Term};
use crate::error::{IdealError, LiftingError};
use crate::exact_linalg::{kernel_lattice, lll_reduce, Int, IntMatrix, LatticeBasis, Rat};
use crate::lifting::{build_a_plus, build_b_plus, LiftingFunction};
use crate::polytope::Point;

/// `u = plus - minus` with disjoint supports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelVectorSplit {
    pub plus: Vec<Int>,
    pub minus: Vec<Int>,
}

pub fn split_positive_negative(u: &[Int]) -> KernelVectorSplit {
    let plus = u.iter().map(|x| if x.is_positive() { x.clone() } else { Int::zero() }).collect();
    let minus = u.iter().map(|x| if x.is_negative() { -x } else { Int::zero() }).collect();
    KernelVectorSplit { plus, minus }
}

fn to_monomial(v: &[Int]) -> Result<Monomial, IdealError> {
    v.iter()
        .map(|x| x.to_u32().ok_or_else(|| IdealError::ExponentOverflow(x.to_string())))
        .collect::<Result<_, _>>()
        .map(Monomial)
}

/// One binomial `z^{u+} - z^{u-}` per basis vector of `lattice`.
pub fn lattice_ideal_generators(lattice: &LatticeBasis, ring: &Arc<Ring>, order: &TermOrder) -> Result<Vec<Polynomial>, IdealError> {
    if lattice.ambient_dim() != ring.nvars() {
        return Err(IdealError::RingMismatch(format!("lattice in Z^{} but ring has {} variables", lattice.ambient_dim(), ring.nvars())));
    }
    binomials(lattice.basis(), ring, order)
}

fn binomials(vectors: &[Vec<Int>], ring: &Arc<Ring>, order: &TermOrder) -> Result<Vec<Polynomial>, IdealError> {
    vectors
        .iter()
        .map(|u| {
            let s = split_positive_negative(u);
            Ok(Polynomial::binomial(ring.clone(), order.clone(), to_monomial(&s.plus)?, to_monomial(&s.minus)?).monic())
        })
        .collect()
}

/// `I : (product of all variables)^infinity`.
///
/// Adjoins `w` with `w * x0 * ... * xN - 1`, computes a basis under the
/// block order `w > (grevlex on the rest)`, keeps the `w`-free part and
/// re-reduces it under the ideal's own order.
pub fn saturate_all_variables(ideal: &IdealGB) -> IdealGB {
    saturate_with(ideal, Strategy::default())
}

pub fn saturate_with(ideal: &IdealGB, strategy: Strategy) -> IdealGB {
    let ring = ideal.ring();
    let n = ring.nvars();
    if ideal.is_zero() {
        return ideal.clone();
    }
    let ext = ring.with_extra("w");
    let mut priority = ideal.order().priority().to_vec();
    priority.push(n);
    let elim = TermOrder::eliminating(&[n], &TermOrder::with_priority(OrderKind::Grevlex, priority));
    let lift = |t: &Term| {
        let mut e = t.0 .0.clone();
        e.push(0);
        (Monomial(e), t.1.clone())
    };
    let mut gens: Vec<Vec<Term>> = ideal
        .basis()
        .iter()
        .map(|p| Polynomial::new(ext.clone(), elim.clone(), p.terms().iter().map(lift).collect()).into_terms())
        .collect();
    let all = Monomial(vec![1; n + 1]);
    gens.push(Polynomial::new(ext.clone(), elim.clone(), vec![(all, Rat::one()), (Monomial::one(n + 1), -Rat::one())]).into_terms());
    let big = buchberger_on(ext, &elim, gens, strategy);
    let kept: Vec<Vec<Term>> = big
        .basis()
        .iter()
        .filter(|p| !p.involves(n))
        .map(|p| {
            Polynomial::new(
                ring.clone(),
                ideal.order().clone(),
                p.terms().iter().map(|(m, c)| (Monomial(m.0[..n].to_vec()), c.clone())).collect(),
            )
            .into_terms()
        })
        .collect();
    buchberger_on(ring.clone(), ideal.order(), kept, strategy)
}

/// A strictly positive vector in the row space of `m`: the sum of its
/// nonnegative rows, when that sum has no zero entry.
fn positive_grading(m: &IntMatrix) -> Option<Vec<u64>> {
    let mut w = vec![Int::zero(); m.cols()];
    for r in 0..m.rows() {
        let row = m.row(r);
        if row.iter().all(|x| !x.is_negative()) {
            for (a, b) in w.iter_mut().zip(row) {
                *a += b;
            }
        }
    }
    w.iter().map(|x| x.to_u64().filter(|&v| v > 0)).collect()
}

/// `I : x_v^infinity` for every variable in turn, for generators homogeneous
/// under `weights`. With `x_v` last in weighted reverse-lex, every basis
/// element divided by its highest power of `x_v` generates the quotient.
fn saturate_graded(ring: &Arc<Ring>, gens: Vec<Vec<Term>>, weights: &[u64], priority: &[usize], strategy: Strategy) -> Vec<Vec<Term>> {
    let mut gens = gens;
    for &v in priority.iter().rev() {
        let mut p: Vec<usize> = priority.iter().copied().filter(|&u| u != v).collect();
        p.push(v);
        let order = TermOrder::with_priority(OrderKind::WeightedGrevlex(weights.to_vec()), p);
        let input = gens.into_iter().map(|t| Polynomial::new(ring.clone(), order.clone(), t).into_terms()).collect();
        let gb = buchberger_on(ring.clone(), &order, input, strategy);
        gens = gb
            .basis()
            .iter()
            .map(|g| {
                let k = g.terms().iter().map(|(m, _)| m.0[v]).min().unwrap_or(0);
                g.terms()
                    .iter()
                    .map(|(m, c)| {
                        let mut e = m.0.clone();
                        e[v] -= k;
                        (Monomial(e), c.clone())
                    })
                    .collect()
            })
            .collect();
    }
    gens
}

/// Saturated lattice ideal of the integer kernel of `m`.
fn kernel_ideal(m: &IntMatrix, ring: Arc<Ring>, order: &TermOrder, strategy: Strategy) -> IdealGB {
    let lattice = kernel_lattice(m);
    let grevlex = TermOrder::with_priority(OrderKind::Grevlex, order.priority().to_vec());
    // a reduced basis gives low-degree binomials and a much cheaper saturation
    let gens = binomials(&lll_reduce(lattice.basis()), &ring, &grevlex).expect("kernel lives in the ring's exponent space");
    let gens: Vec<Vec<Term>> = gens.into_iter().map(Polynomial::into_terms).collect();
    match positive_grading(m) {
        Some(weights) => {
            let saturated = saturate_graded(&ring, gens, &weights, order.priority(), strategy);
            let input = saturated.into_iter().map(|t| Polynomial::new(ring.clone(), order.clone(), t).into_terms()).collect();
            buchberger_on(ring, order, input, strategy)
        }
        None => saturate_with(&buchberger_on(ring, &grevlex, gens, strategy), strategy).reorder(order),
    }
}

/// The ideal of the toric variety of `points` in `P^l`, variables `x0..xl`.
pub fn toric_ideal(points: &[Point], order: OrderChoice) -> IdealGB {
    let a = build_a_plus(points);
    let ring = Ring::projective(points.len());
    kernel_ideal(&a.matrix, ring, &order.order(points.len()), Strategy::default())
}

/// The ideal of the degeneration family given by `lift`, in `x0..xl, h`.
pub fn degeneration_ideal(points: &[Point], lift: &LiftingFunction, order: OrderChoice) -> Result<IdealGB, LiftingError> {
    degeneration_ideal_with(points, lift, order, Strategy::default())
}

pub fn degeneration_ideal_with(points: &[Point], lift: &LiftingFunction, order: OrderChoice, strategy: Strategy) -> Result<IdealGB, LiftingError> {
    let b = build_b_plus(points, lift)?;
    let ring = Ring::with_eta(points.len());
    Ok(kernel_ideal(&b.matrix, ring, &order.order(points.len() + 1), strategy))
}

/// Equality of ideals through their reduced bases under a common order.
pub fn ideal_equal(a: &IdealGB, b: &IdealGB) -> Result<bool, IdealError> {
    if a.ring() != b.ring() {
        return Err(IdealError::RingMismatch(format!("{:?} vs {:?}", a.ring().names(), b.ring().names())));
    }
    Ok(a.basis() == b.reorder(a.order()).basis())
}

pub fn ideal_contains(ideal: &IdealGB, f: &Polynomial) -> Result<bool, IdealError> {
    Ok(ideal.normal_form(f)?.is_zero())
}

/// Substitutes `h := value` (0 or 1) into every generator and re-reduces in
/// the ring without `h`.
pub fn specialize_eta(ideal: &IdealGB, value: bool) -> Result<IdealGB, IdealError> {
    let eta = ideal.ring().eta().ok_or(IdealError::NoEta)?;
    let order = ideal.order().without_variable(eta);
    let ring = ideal.ring().without(eta);
    let v = if value { Rat::one() } else { Rat::zero() };
    let gens: Vec<Vec<Term>> = ideal.basis().iter().map(|p| p.substitute_and_drop(eta, &v, &order).into_terms()).filter(|t| !t.is_empty()).collect();
    Ok(buchberger_on(ring, &order, gens, Strategy::default()))
}

/// A Laurent polynomial in the torus variables, keyed by exponent vector.
pub type Laurent = BTreeMap<Vec<Int>, Rat>;

/// Substitutes each variable by a Laurent monomial `T^image` (or by zero
/// when the image is `None`) and collects terms.
pub fn substitute_monomials(f: &Polynomial, images: &[Option<Vec<Int>>]) -> Laurent {
    let width = images.iter().flatten().map(Vec::len).next().unwrap_or(0);
    let mut out = Laurent::new();
    'terms: for (m, c) in f.terms() {
        let mut exp = vec![Int::zero(); width];
        for (v, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            match &images[v] {
                None => continue 'terms,
                Some(img) => {
                    for (x, y) in exp.iter_mut().zip(img) {
                        *x += y * Int::from(e);
                    }
                }
            }
        }
        let entry = out.entry(exp).or_insert_with(Rat::zero);
        *entry += c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Whether every basis element vanishes identically under the substitution.
pub fn vanishes_on_parametrization(ideal: &IdealGB, images: &[Option<Vec<Int>>]) -> bool {
    ideal.basis().iter().all(|g| substitute_monomials(g, images).is_empty())
}

/// `x_j := t^{m_j}` for the points of the component, `x_j := 0` otherwise.
pub fn component_images(component: &[Point], all_points: &[Point]) -> Vec<Option<Vec<Int>>> {
    all_points.iter().map(|m| component.contains(m).then(|| m.clone())).collect()
}

/// Whether the (h-free) ideal vanishes on the torus of the component's
/// toric variety.
pub fn vanishes_on_component(ideal: &IdealGB, component: &[Point], all_points: &[Point]) -> bool {
    vanishes_on_parametrization(ideal, &component_images(component, all_points))
}

/// Images `x_j := lambda^{lift_j} t^{m_j}`, `h := lambda` for the family.
pub fn family_images(points: &[Point], lift: &LiftingFunction) -> Vec<Option<Vec<Int>>> {
    let mut images: Vec<Option<Vec<Int>>> = points
        .iter()
        .zip(&lift.values)
        .map(|(m, v)| {
            let mut e = m.clone();
            e.push(v.clone());
            Some(e)
        })
        .collect();
    let n = points.first().map_or(0, Vec::len);
    let mut lambda = vec![Int::zero(); n];
    lambda.push(Int::one());
    images.push(Some(lambda));
    images
}
