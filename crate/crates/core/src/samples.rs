//! Ready-made subdivisions: the twisted cubic, the blown-up quadric
//! surface, a non-semi-stable square, and seeded random smooth instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact_linalg::Int;
use crate::polytope::{is_semistable, point, validate_partition, HalfSpace, LatticePolytope, Point};

/// A polytope with an ordered list of pieces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub name: String,
    pub parent: LatticePolytope,
    pub pieces: Vec<LatticePolytope>,
}

fn poly(dim: usize, vs: &[&[i64]]) -> LatticePolytope {
    LatticePolytope::from_vertices(dim, vs.iter().map(|v| point(v)).collect()).expect("fixture polytope")
}

/// `[0,3]` split at 1.
pub fn twisted_cubic() -> Instance {
    Instance {
        name: "twisted-cubic".into(),
        parent: poly(1, &[&[0], &[3]]),
        pieces: vec![poly(1, &[&[0], &[1]]), poly(1, &[&[1], &[3]])],
    }
}

/// The pentagon of P1 x P1 blown up in a point, cut along `y2 = 1`.
pub fn blow_up() -> Instance {
    Instance {
        name: "blow-up".into(),
        parent: poly(2, &[&[0, 0], &[2, 0], &[2, 1], &[1, 2], &[0, 2]]),
        pieces: vec![poly(2, &[&[0, 0], &[2, 0], &[2, 1], &[0, 1]]), poly(2, &[&[0, 1], &[2, 1], &[1, 2], &[0, 2]])],
    }
}

/// `[0,2]^2` cut into four unit squares; fails the face count at `(1,1)`.
pub fn four_squares() -> Instance {
    let sq = |x: i64, y: i64| poly(2, &[&[x, y], &[x + 1, y], &[x, y + 1], &[x + 1, y + 1]]);
    Instance { name: "four-squares".into(), parent: poly(2, &[&[0, 0], &[2, 0], &[0, 2], &[2, 2]]), pieces: vec![sq(0, 0), sq(1, 0), sq(0, 1), sq(1, 1)] }
}

fn transform(p: &LatticePolytope, m: &[[i64; 2]; 2], shift: &[i64; 2]) -> LatticePolytope {
    let vs = p
        .vertices()
        .iter()
        .map(|v| {
            (0..2)
                .map(|i| Int::from(m[i][0]) * &v[0] + Int::from(m[i][1]) * &v[1] + Int::from(shift[i]))
                .collect::<Point>()
        })
        .collect();
    LatticePolytope::from_vertices(2, vs).expect("unimodular image is full-dimensional")
}

fn random_unimodular(rng: &mut ChaCha8Rng) -> [[i64; 2]; 2] {
    let mut m = [[1, 0], [0, 1]];
    for _ in 0..rng.gen_range(0..3) {
        let k = rng.gen_range(-1..=1);
        let s = if rng.gen_bool(0.5) { [[1, k], [0, 1]] } else { [[1, 0], [k, 1]] };
        m = [
            [s[0][0] * m[0][0] + s[0][1] * m[1][0], s[0][0] * m[0][1] + s[0][1] * m[1][1]],
            [s[1][0] * m[0][0] + s[1][1] * m[1][0], s[1][0] * m[0][1] + s[1][1] * m[1][1]],
        ];
    }
    if rng.gen_bool(0.5) {
        m.swap(0, 1);
    }
    m
}

fn random_segment(rng: &mut ChaCha8Rng, index: usize) -> Instance {
    let len = rng.gen_range(2..=11);
    let at = rng.gen_range(1..len);
    let off = rng.gen_range(-3..=3);
    Instance {
        name: format!("random-{index}-segment"),
        parent: poly(1, &[&[off], &[off + len]]),
        pieces: vec![poly(1, &[&[off], &[off + at]]), poly(1, &[&[off + at], &[off + len]])],
    }
}

fn random_polygon(rng: &mut ChaCha8Rng) -> Option<LatticePolytope> {
    let (a, b) = (rng.gen_range(1..=4), rng.gen_range(1..=3));
    let corners = [[0, 0], [a, 0], [0, b], [a, b]];
    let chopped: Vec<[i64; 2]> = corners.iter().copied().filter(|_| rng.gen_bool(0.4)).collect();
    let pts: Vec<Point> = (0..=b)
        .flat_map(|y| (0..=a).map(move |x| [x, y]))
        .filter(|p| !chopped.contains(p))
        .map(|p| point(&p))
        .collect();
    let p = LatticePolytope::from_vertices(2, pts).ok()?;
    (p.is_smooth() && p.lattice_points().len() <= 12).then_some(p)
}

fn random_polygon_instance(rng: &mut ChaCha8Rng, index: usize) -> Option<Instance> {
    let parent = random_polygon(rng)?;
    let normals = [[1, 0], [0, 1], [1, 1], [1, -1]];
    let normal = normals.choose(rng)?;
    let values: Vec<Int> = parent.vertices().iter().map(|v| Int::from(normal[0]) * &v[0] + Int::from(normal[1]) * &v[1]).collect();
    let (lo, hi) = (values.iter().min()?.clone(), values.iter().max()?.clone());
    let lo: i64 = lo.try_into().ok()?;
    let hi: i64 = hi.try_into().ok()?;
    if hi - lo < 2 {
        return None;
    }
    let c = rng.gen_range(lo + 1..hi);
    let cut = HalfSpace { normal: point(normal), offset: Int::from(-c) };
    let (below, above) = parent.split(&cut)?;
    validate_partition(&parent, &below, &above).ok()?;
    let m = random_unimodular(rng);
    let shift = [rng.gen_range(-2..=2), rng.gen_range(-2..=2)];
    let inst = Instance {
        name: format!("random-{index}-polygon"),
        parent: transform(&parent, &m, &shift),
        pieces: vec![transform(&below, &m, &shift), transform(&above, &m, &shift)],
    };
    is_semistable(&inst.parent, &inst.pieces).ok()?.semistable.then_some(inst)
}

/// `count` seeded random two-piece semi-stable subdivisions of smooth
/// segments and polygons with at most 12 lattice points. Roughly a third are
/// one-dimensional.
pub fn random_instances(seed: u64, count: usize) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let index = out.len();
        let inst = if rng.gen_range(0..3) == 0 { Some(random_segment(&mut rng, index)) } else { random_polygon_instance(&mut rng, index) };
        out.extend(inst);
    }
    out
}
