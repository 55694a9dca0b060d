//! The full degeneration computation for one subdivision, and batches of
//! them.

use crate::error::{PipelineError, PolytopeError};
use crate::exact_linalg::{kernel_lattice, lattice_equal, IntMatrix, LatticeBasis};
use crate::ideal::{
    degeneration_ideal_with, ideal_equal, specialize_eta, toric_ideal, vanishes_on_component, IdealGB, OrderChoice, Strategy,
};
use crate::lifting::{
    build_a_plus, build_b_plus, elementary_transform, elementary_transform_inverse, lifting_functions, verify_transform, ExponentMatrix,
    LiftingFunction,
};
use crate::par;
use crate::polytope::{cut_hyperplane, is_semistable, validate_partition, CutHyperplane, LatticePolytope, PartitionTwo, Point};
use crate::samples::Instance;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Certificates {
    /// Reduced bases of `I_F` and `I_G` coincide.
    pub gb_equal: bool,
    pub kernels_equal: bool,
    /// `E * B_G = B_F` and `E^-1 * B_F = B_G`, both unimodular.
    pub e_verified: bool,
    pub semistable: bool,
    /// `I_F` at `h = 1` equals the toric ideal.
    pub generic_fiber: bool,
    /// `I_F` at `h = 0` vanishes on both pieces.
    pub central_fiber: bool,
}

impl Certificates {
    pub fn all(&self) -> bool {
        self.gb_equal && self.kernels_equal && self.e_verified && self.semistable && self.generic_fiber && self.central_fiber
    }
}

#[derive(Clone, Debug)]
pub struct Degeneration {
    pub points: Vec<Point>,
    pub partition: PartitionTwo,
    pub cut: CutHyperplane,
    pub f: LiftingFunction,
    pub g: LiftingFunction,
    pub a: ExponentMatrix,
    pub bf: ExponentMatrix,
    pub bg: ExponentMatrix,
    pub e: IntMatrix,
    pub kernel_f: LatticeBasis,
    pub kernel_g: LatticeBasis,
    pub toric: IdealGB,
    pub ideal_f: IdealGB,
    pub ideal_g: IdealGB,
    pub central: IdealGB,
    /// Per piece, whether the central fiber vanishes on it.
    pub components: [bool; 2],
    pub certificates: Certificates,
}

/// `points` in the canonical order, or `order` after checking that it lists
/// each lattice point exactly once.
pub fn ordered_points(parent: &LatticePolytope, order: Option<&[Point]>) -> Result<Vec<Point>, PipelineError> {
    let canonical = parent.lattice_points();
    let Some(order) = order else { return Ok(canonical) };
    if let Some(p) = order.iter().find(|p| p.len() != parent.dim()) {
        return Err(PipelineError::PointOrder(format!("point {p:?} has the wrong dimension")));
    }
    let mut given = order.to_vec();
    given.sort();
    let mut expected = canonical;
    expected.sort();
    if given != expected {
        return Err(PipelineError::PointOrder("not a permutation of the lattice points".into()));
    }
    Ok(order.to_vec())
}

/// Validated, semi-stable two-piece partition.
pub fn semistable_partition(parent: &LatticePolytope, first: &LatticePolytope, second: &LatticePolytope) -> Result<PartitionTwo, PipelineError> {
    let partition = validate_partition(parent, first, second)?;
    let report = is_semistable(parent, &[first.clone(), second.clone()])?;
    match report.violation {
        Some(v) => Err(PipelineError::NotSemistable(v.to_string())),
        None => Ok(partition),
    }
}

pub fn degenerate(parent: &LatticePolytope, first: &LatticePolytope, second: &LatticePolytope, points: Option<&[Point]>, order: OrderChoice) -> Result<Degeneration, PipelineError> {
    degenerate_with(parent, first, second, points, order, Strategy::default())
}

pub fn degenerate_with(
    parent: &LatticePolytope,
    first: &LatticePolytope,
    second: &LatticePolytope,
    points: Option<&[Point]>,
    order: OrderChoice,
    strategy: Strategy,
) -> Result<Degeneration, PipelineError> {
    let partition = semistable_partition(parent, first, second)?;
    let points = ordered_points(parent, points)?;
    let cut = cut_hyperplane(&partition)?;
    let (f, g) = lifting_functions(&partition, &cut, &points)?;
    let a = build_a_plus(&points);
    let bf = build_b_plus(&points, &f)?;
    let bg = build_b_plus(&points, &g)?;
    let e = elementary_transform(&cut);
    let e_inv = elementary_transform_inverse(&cut);
    let e_verified = verify_transform(&e, &bg.matrix, &bf.matrix).map_err(crate::error::LiftingError::from)?
        && verify_transform(&e_inv, &bf.matrix, &bg.matrix).map_err(crate::error::LiftingError::from)?;
    let kernel_f = kernel_lattice(&bf.matrix);
    let kernel_g = kernel_lattice(&bg.matrix);
    let kernels_equal = lattice_equal(&kernel_f, &kernel_g).map_err(crate::error::LiftingError::from)?;

    let toric = toric_ideal(&points, order);
    let ideal_f = degeneration_ideal_with(&points, &f, order, strategy)?;
    let ideal_g = degeneration_ideal_with(&points, &g, order, strategy)?;
    let gb_equal = ideal_equal(&ideal_f, &ideal_g).expect("same ring");
    let generic = specialize_eta(&ideal_f, true).expect("ring has h");
    let generic_fiber = ideal_equal(&generic, &toric).expect("same ring");
    let central = specialize_eta(&ideal_f, false).expect("ring has h");
    let components = [&partition.first, &partition.second].map(|piece| {
        let on: Vec<Point> = points.iter().filter(|m| piece.contains(m)).cloned().collect();
        vanishes_on_component(&central, &on, &points)
    });
    let certificates = Certificates {
        gb_equal,
        kernels_equal,
        e_verified,
        semistable: true,
        generic_fiber,
        central_fiber: components.iter().all(|&c| c),
    };
    Ok(Degeneration { points, partition, cut, f, g, a, bf, bg, e, kernel_f, kernel_g, toric, ideal_f, ideal_g, central, components, certificates })
}

fn run_instance(inst: &Instance, order: OrderChoice, strategy: Strategy) -> Result<Degeneration, PipelineError> {
    match inst.pieces.as_slice() {
        [first, second] => degenerate_with(&inst.parent, first, second, None, order, strategy),
        other => Err(PolytopeError::InvalidPartition(format!("expected 2 pieces, got {}", other.len())).into()),
    }
}

/// Runs every instance, in parallel when the `parallel` feature is on.
pub fn degenerate_batch(instances: &[Instance], order: OrderChoice) -> Vec<Result<Degeneration, PipelineError>> {
    par::map(instances, |inst| run_instance(inst, order, Strategy::default()))
}

/// Runs every instance one after another with the sequential engine.
pub fn degenerate_batch_sequential(instances: &[Instance], order: OrderChoice) -> Vec<Result<Degeneration, PipelineError>> {
    par::map_sequential(instances, |inst| run_instance(inst, order, Strategy::Sequential))
}
