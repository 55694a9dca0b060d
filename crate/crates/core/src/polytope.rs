//! Lattice polytopes with exact vertex and half-space representations.
//!
//! Covers the geometric side of the pipeline: convex hulls in dimension at
//! most three, face lattices, lattice-point enumeration, the smoothness
//! test, two-piece partitions with their shared wall, the face-count
//! semi-stability condition for subdivisions, and the primitive equation of
//! the cut between two pieces.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::PolytopeError;
use crate::exact_linalg::{dot, kernel_lattice, primitive, solve_rational, Int, IntMatrix, Rat};
use crate::par;

pub type Point = Vec<Int>;

pub fn point(coords: &[i64]) -> Point {
    coords.iter().map(|&c| Int::from(c)).collect()
}

/// The closed half-space `normal . y + offset >= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfSpace {
    pub normal: Vec<Int>,
    pub offset: Int,
}

impl HalfSpace {
    pub fn eval(&self, p: &[Int]) -> Int {
        dot(&self.normal, p) + &self.offset
    }

    pub fn eval_rat(&self, p: &[Rat]) -> Rat {
        self.normal.iter().zip(p).fold(Rat::from_integer(self.offset.clone()), |acc, (a, x)| acc + x * a)
    }

    pub fn negated(&self) -> HalfSpace {
        HalfSpace { normal: self.normal.iter().map(|a| -a).collect(), offset: -&self.offset }
    }
}

/// A face, recorded by the facets it lies on and the vertices it contains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    /// Indices of the facets containing the face (empty for the polytope itself).
    pub facets: Vec<usize>,
    /// Indices into the polytope's vertex list.
    pub vertices: Vec<usize>,
    pub dim: usize,
    /// Barycenter of the vertices, a point of the relative interior.
    pub witness: Vec<Rat>,
}

/// A full-dimensional lattice polytope in `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<Point>,
    facets: Vec<HalfSpace>,
}

/// Orders points by last coordinate, then next-to-last, and so on.
pub fn colex_cmp(a: &[Int], b: &[Int]) -> std::cmp::Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

fn difference_matrix<'a>(dim: usize, pts: impl IntoIterator<Item = &'a Point>) -> IntMatrix {
    let mut it = pts.into_iter();
    let Some(base) = it.next() else { return IntMatrix::zeros(0, dim) };
    let rows: Vec<Vec<Int>> = it.map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect()).collect();
    IntMatrix::from_rows(dim, &rows).expect("points share a dimension")
}

/// Dimension of the affine hull of a nonempty point set.
pub fn affine_rank<'a>(dim: usize, pts: impl IntoIterator<Item = &'a Point>) -> usize {
    difference_matrix(dim, pts).rank()
}

fn centroid(dim: usize, pts: &[&Point]) -> Vec<Rat> {
    let n = Int::from(pts.len());
    (0..dim)
        .map(|i| Rat::new(pts.iter().fold(Int::zero(), |acc, p| acc + &p[i]), n.clone()))
        .collect()
}

/// The affine hyperplane through `pts` (affinely independent, `dim` of
/// them), as a primitive form. `None` when the points span less.
fn hyperplane_through(dim: usize, pts: &[&Point]) -> Option<HalfSpace> {
    let k = kernel_lattice(&difference_matrix(dim, pts.iter().copied()));
    if k.rank() != 1 {
        return None;
    }
    let normal = k.basis()[0].clone();
    let offset = -dot(&normal, pts[0]);
    Some(HalfSpace { normal, offset })
}

/// Vertices of `{y : h.eval(y) >= 0 for all h}` as rational points, sorted and
/// deduplicated. Assumes the region is bounded.
pub fn halfspace_vertices(dim: usize, halfspaces: &[HalfSpace]) -> Vec<Vec<Rat>> {
    let mut out = BTreeSet::new();
    for combo in combinations(halfspaces.len(), dim) {
        let normals: Vec<Vec<Int>> = combo.iter().map(|&i| halfspaces[i].normal.clone()).collect();
        if IntMatrix::from_rows(dim, &normals).expect("normals share a dimension").rank() != dim {
            continue;
        }
        let a: Vec<Vec<Rat>> = normals.iter().map(|r| r.iter().cloned().map(Rat::from_integer).collect()).collect();
        let b: Vec<Rat> = combo.iter().map(|&i| Rat::from_integer(-&halfspaces[i].offset)).collect();
        let Some(x) = solve_rational(&a, &b) else { continue };
        if halfspaces.iter().all(|h| !h.eval_rat(&x).is_negative()) {
            out.insert(x);
        }
    }
    out.into_iter().collect()
}

fn integral_point(p: &[Rat]) -> Option<Point> {
    p.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
}

impl LatticePolytope {
    /// Convex hull of a point set in dimension 1, 2 or 3.
    ///
    /// Facets are found by testing the hyperplane through every affinely
    /// independent `n`-subset of the input; non-vertices are dropped.
    pub fn from_vertices(dim: usize, points: Vec<Point>) -> Result<Self, PolytopeError> {
        check_dims(dim, &points)?;
        if dim > 3 {
            return Err(PolytopeError::UnsupportedDimension { dim });
        }
        let pts: Vec<Point> = points.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        if dim == 0 || pts.is_empty() || affine_rank(dim, &pts) != dim {
            return Err(PolytopeError::Degenerate { dim });
        }
        let mut facets = BTreeSet::new();
        for combo in combinations(pts.len(), dim) {
            let chosen: Vec<&Point> = combo.iter().map(|&i| &pts[i]).collect();
            let Some(h) = hyperplane_through(dim, &chosen) else { continue };
            let values: Vec<Int> = pts.iter().map(|p| h.eval(p)).collect();
            if values.iter().all(|v| !v.is_negative()) {
                facets.insert(h);
            } else if values.iter().all(|v| !v.is_positive()) {
                facets.insert(h.negated());
            }
        }
        let facets: Vec<HalfSpace> = facets.into_iter().collect();
        let mut vertices: Vec<Point> = pts
            .into_iter()
            .filter(|p| {
                let tight: Vec<Vec<Int>> = facets.iter().filter(|h| h.eval(p).is_zero()).map(|h| h.normal.clone()).collect();
                IntMatrix::from_rows(dim, &tight).expect("normals share a dimension").rank() == dim
            })
            .collect();
        vertices.sort_by(|a, b| colex_cmp(a, b));
        Ok(LatticePolytope { dim, vertices, facets })
    }

    /// Builds a polytope from caller-supplied V- and H-representations,
    /// checking that both describe the same set. Works in any dimension.
    pub fn from_vh(dim: usize, vertices: Vec<Point>, halfspaces: Vec<HalfSpace>) -> Result<Self, PolytopeError> {
        check_dims(dim, &vertices)?;
        let mut facets = BTreeSet::new();
        for (i, h) in halfspaces.into_iter().enumerate() {
            if h.normal.len() != dim {
                return Err(PolytopeError::DimensionMismatch { index: i, expected: dim, found: h.normal.len() });
            }
            let mut all = h.normal.clone();
            all.push(h.offset.clone());
            let all = primitive(&all);
            let normal = all[..dim].to_vec();
            if !crate::exact_linalg::content(&normal).is_one() {
                return Err(PolytopeError::Inconsistent(format!("half-space {i} has no primitive integral normal")));
            }
            facets.insert(HalfSpace { normal, offset: all[dim].clone() });
        }
        let facets: Vec<HalfSpace> = facets.into_iter().collect();
        let mut verts: Vec<Point> = vertices.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        if verts.is_empty() || affine_rank(dim, &verts) != dim {
            return Err(PolytopeError::Degenerate { dim });
        }
        for (i, h) in facets.iter().enumerate() {
            if verts.iter().any(|v| h.eval(v).is_negative()) {
                return Err(PolytopeError::Inconsistent(format!("a vertex violates half-space {i}")));
            }
            let tight: Vec<&Point> = verts.iter().filter(|v| h.eval(v).is_zero()).collect();
            if tight.is_empty() || affine_rank(dim, tight.iter().copied()) + 1 != dim {
                return Err(PolytopeError::Inconsistent(format!("half-space {i} is not a facet")));
            }
        }
        let from_h: Vec<Point> = halfspace_vertices(dim, &facets).iter().map(|p| integral_point(p)).collect::<Option<_>>()
            .ok_or_else(|| PolytopeError::Inconsistent("half-spaces have a non-lattice vertex".into()))?;
        if from_h.into_iter().collect::<BTreeSet<_>>() != verts.iter().cloned().collect::<BTreeSet<_>>() {
            return Err(PolytopeError::Inconsistent("vertex and half-space descriptions differ".into()));
        }
        verts.sort_by(|a, b| colex_cmp(a, b));
        Ok(LatticePolytope { dim, vertices: verts, facets })
    }

    /// The region `{y : h(y) >= 0}` if it is a full-dimensional lattice polytope.
    pub fn from_halfspaces(dim: usize, halfspaces: &[HalfSpace]) -> Option<Self> {
        let verts: Vec<Point> = halfspace_vertices(dim, halfspaces).iter().map(|p| integral_point(p)).collect::<Option<_>>()?;
        if verts.is_empty() || affine_rank(dim, &verts) != dim {
            return None;
        }
        if dim <= 3 {
            Self::from_vertices(dim, verts).ok()
        } else {
            let facets: Vec<HalfSpace> = halfspaces
                .iter()
                .filter(|h| {
                    let tight: Vec<&Point> = verts.iter().filter(|v| h.eval(v).is_zero()).collect();
                    !tight.is_empty() && affine_rank(dim, tight.iter().copied()) + 1 == dim
                })
                .cloned()
                .collect();
            Self::from_vh(dim, verts, facets).ok()
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Facet half-spaces in lexicographic order of `(normal, offset)`.
    pub fn facets(&self) -> &[HalfSpace] {
        &self.facets
    }

    pub fn contains(&self, p: &[Int]) -> bool {
        self.facets.iter().all(|h| !h.eval(p).is_negative())
    }

    pub fn contains_rat(&self, p: &[Rat]) -> bool {
        self.facets.iter().all(|h| !h.eval_rat(p).is_negative())
    }

    fn bounding_box(&self) -> (Vec<Int>, Vec<Int>) {
        let lo = (0..self.dim).map(|i| self.vertices.iter().map(|v| &v[i]).min().unwrap().clone()).collect();
        let hi = (0..self.dim).map(|i| self.vertices.iter().map(|v| &v[i]).max().unwrap().clone()).collect();
        (lo, hi)
    }

    fn points_in_slab(&self, first: &Int, lo: &[Int], hi: &[Int]) -> Vec<Point> {
        let mut out = Vec::new();
        let mut cur: Point = lo.to_vec();
        cur[0] = first.clone();
        loop {
            if self.contains(&cur) {
                out.push(cur.clone());
            }
            // odometer over coordinates 1..n
            let mut i = 1;
            loop {
                if i == self.dim {
                    return out;
                }
                if cur[i] < hi[i] {
                    cur[i] += 1;
                    break;
                }
                cur[i] = lo[i].clone();
                i += 1;
            }
        }
    }

    fn slabs(&self) -> (Vec<Int>, Vec<Int>, Vec<Int>) {
        let (lo, hi) = self.bounding_box();
        let mut firsts = Vec::new();
        let mut x = lo[0].clone();
        while x <= hi[0] {
            firsts.push(x.clone());
            x += 1;
        }
        (firsts, lo, hi)
    }

    /// All lattice points, in colexicographic order (last coordinate major).
    pub fn lattice_points(&self) -> Vec<Point> {
        let (firsts, lo, hi) = self.slabs();
        let mut pts = par::flat_map(&firsts, |x| self.points_in_slab(x, &lo, &hi));
        pts.sort_by(|a, b| colex_cmp(a, b));
        pts
    }

    /// Single-threaded [`lattice_points`](Self::lattice_points).
    pub fn lattice_points_sequential(&self) -> Vec<Point> {
        let (firsts, lo, hi) = self.slabs();
        let mut pts: Vec<Point> = firsts.iter().flat_map(|x| self.points_in_slab(x, &lo, &hi)).collect();
        pts.sort_by(|a, b| colex_cmp(a, b));
        pts
    }

    /// Every nonempty face, including the polytope itself, ordered by
    /// dimension and then by vertex indices.
    pub fn faces(&self) -> Vec<Face> {
        let incidence: Vec<BTreeSet<usize>> = self
            .facets
            .iter()
            .map(|h| (0..self.vertices.len()).filter(|&v| h.eval(&self.vertices[v]).is_zero()).collect())
            .collect();
        let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        let mut queue = vec![(0..self.vertices.len()).collect::<BTreeSet<usize>>()];
        while let Some(s) = queue.pop() {
            if !seen.insert(s.clone()) {
                continue;
            }
            for inc in &incidence {
                let t: BTreeSet<usize> = s.intersection(inc).copied().collect();
                if !t.is_empty() && !seen.contains(&t) {
                    queue.push(t);
                }
            }
        }
        let mut faces: Vec<Face> = seen
            .into_iter()
            .map(|s| {
                let pts: Vec<&Point> = s.iter().map(|&i| &self.vertices[i]).collect();
                let facets = incidence.iter().enumerate().filter(|(_, inc)| s.is_subset(inc)).map(|(i, _)| i).collect();
                Face {
                    facets,
                    dim: affine_rank(self.dim, pts.iter().copied()),
                    witness: centroid(self.dim, &pts),
                    vertices: s.into_iter().collect(),
                }
            })
            .collect();
        faces.sort_by(|a, b| (a.dim, &a.vertices).cmp(&(b.dim, &b.vertices)));
        faces
    }

    /// Vertex sets (as sorted coordinate lists) of all faces.
    pub fn face_vertex_sets(&self) -> BTreeSet<Vec<Point>> {
        self.faces().into_iter().map(|f| self.face_points(&f)).collect()
    }

    pub fn face_points(&self, f: &Face) -> Vec<Point> {
        let mut pts: Vec<Point> = f.vertices.iter().map(|&i| self.vertices[i].clone()).collect();
        pts.sort();
        pts
    }

    /// `n!` times the Euclidean volume, from a pulling triangulation.
    pub fn normalized_volume(&self) -> Int {
        let faces = self.faces();
        let mut memo: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
        let top = faces.len() - 1;
        let simplices = triangulate(&faces, top, &mut memo);
        simplices
            .iter()
            .map(|s| {
                let base = &self.vertices[s[0]];
                let rows: Vec<Vec<Int>> = s[1..].iter().map(|&v| self.vertices[v].iter().zip(base).map(|(a, b)| a - b).collect()).collect();
                IntMatrix::from_rows(self.dim, &rows).unwrap().det().unwrap().abs()
            })
            .sum()
    }

    /// Smooth (Delzant): at each vertex exactly `n` edges meet and their
    /// primitive directions form a lattice basis.
    pub fn is_smooth(&self) -> bool {
        let edges: Vec<Face> = self.faces().into_iter().filter(|f| f.dim == 1).collect();
        (0..self.vertices.len()).all(|v| {
            let dirs: Vec<Vec<Int>> = edges
                .iter()
                .filter(|e| e.vertices.contains(&v))
                .map(|e| {
                    let w = e.vertices.iter().copied().find(|&w| w != v).expect("edge has two vertices");
                    primitive(&self.vertices[w].iter().zip(&self.vertices[v]).map(|(a, b)| a - b).collect::<Vec<_>>())
                })
                .collect();
            dirs.len() == self.dim && IntMatrix::from_rows(self.dim, &dirs).unwrap().det().unwrap().abs().is_one()
        })
    }

    /// Rational vertices of the intersection with another polytope.
    pub fn intersection_vertices(&self, other: &LatticePolytope) -> Vec<Vec<Rat>> {
        let hs: Vec<HalfSpace> = self.facets.iter().chain(&other.facets).cloned().collect::<BTreeSet<_>>().into_iter().collect();
        halfspace_vertices(self.dim, &hs)
    }

    /// Splits along `cut`, returning `({cut <= 0}, {cut >= 0})` when both
    /// sides are full-dimensional lattice polytopes.
    pub fn split(&self, cut: &HalfSpace) -> Option<(LatticePolytope, LatticePolytope)> {
        let mut below = self.facets.clone();
        below.push(cut.negated());
        let mut above = self.facets.clone();
        above.push(cut.clone());
        Some((Self::from_halfspaces(self.dim, &below)?, Self::from_halfspaces(self.dim, &above)?))
    }
}

fn check_dims(dim: usize, pts: &[Point]) -> Result<(), PolytopeError> {
    match pts.iter().position(|p| p.len() != dim) {
        Some(i) => Err(PolytopeError::DimensionMismatch { index: i, expected: dim, found: pts[i].len() }),
        None => Ok(()),
    }
}

fn triangulate(faces: &[Face], idx: usize, memo: &mut BTreeMap<usize, Vec<Vec<usize>>>) -> Vec<Vec<usize>> {
    if let Some(s) = memo.get(&idx) {
        return s.clone();
    }
    let face = &faces[idx];
    let out = if face.dim == 0 {
        vec![face.vertices.clone()]
    } else {
        let apex = face.vertices[0];
        let mut out = Vec::new();
        for (j, sub) in faces.iter().enumerate() {
            if sub.dim + 1 == face.dim && !sub.vertices.contains(&apex) && sub.vertices.iter().all(|v| face.vertices.contains(v)) {
                for mut s in triangulate(faces, j, memo) {
                    s.insert(0, apex);
                    out.push(s);
                }
            }
        }
        out
    };
    memo.insert(idx, out.clone());
    out
}

impl fmt::Display for LatticePolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.vertices.iter().map(|v| fmt_point(v)).collect();
        write!(f, "conv{{{}}}", vs.join(", "))
    }
}

pub fn fmt_point(p: &[Int]) -> String {
    let cs: Vec<String> = p.iter().map(|c| c.to_string()).collect();
    format!("({})", cs.join(","))
}

/// A subdivision of a polytope into two full-dimensional pieces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionTwo {
    pub parent: LatticePolytope,
    pub first: LatticePolytope,
    pub second: LatticePolytope,
    /// Vertices of the common facet, sorted.
    pub wall: Vec<Point>,
}

impl PartitionTwo {
    pub fn swapped(&self) -> PartitionTwo {
        PartitionTwo { parent: self.parent.clone(), first: self.second.clone(), second: self.first.clone(), wall: self.wall.clone() }
    }

    pub fn pieces(&self) -> [&LatticePolytope; 2] {
        [&self.first, &self.second]
    }
}

fn check_contained(parent: &LatticePolytope, pieces: &[&LatticePolytope]) -> Result<(), PolytopeError> {
    for (i, p) in pieces.iter().enumerate() {
        if p.dim != parent.dim {
            return Err(PolytopeError::InvalidPartition(format!("piece {} has dimension {}, expected {}", i + 1, p.dim, parent.dim)));
        }
        if !p.vertices.iter().all(|v| parent.contains(v)) {
            return Err(PolytopeError::InvalidPartition(format!("piece {} is not contained in the polytope", i + 1)));
        }
    }
    let total: Int = pieces.iter().map(|p| p.normalized_volume()).sum();
    let whole = parent.normalized_volume();
    if total > whole {
        return Err(PolytopeError::InvalidPartition("pieces overlap".into()));
    }
    if total < whole {
        return Err(PolytopeError::InvalidPartition("pieces leave a gap".into()));
    }
    Ok(())
}

/// The intersection of two pieces as a sorted list of lattice points, if it
/// is a common proper face of both (or empty).
fn common_face(a: &LatticePolytope, b: &LatticePolytope) -> Result<Vec<Point>, PolytopeError> {
    let inter = a.intersection_vertices(b);
    if inter.is_empty() {
        return Ok(Vec::new());
    }
    let mut pts: Vec<Point> = inter
        .iter()
        .map(|p| integral_point(p))
        .collect::<Option<_>>()
        .ok_or_else(|| PolytopeError::InvalidPartition("pieces meet in a non-lattice point".into()))?;
    pts.sort();
    if affine_rank(a.dim, &pts) == a.dim {
        return Err(PolytopeError::InvalidPartition("pieces overlap".into()));
    }
    if !a.face_vertex_sets().contains(&pts) || !b.face_vertex_sets().contains(&pts) {
        return Err(PolytopeError::InvalidPartition(format!(
            "intersection {} is not a common face",
            pts.iter().map(|p| fmt_point(p)).collect::<Vec<_>>().join(" ")
        )));
    }
    Ok(pts)
}

/// Checks that `first` and `second` subdivide `parent` and share a facet.
pub fn validate_partition(parent: &LatticePolytope, first: &LatticePolytope, second: &LatticePolytope) -> Result<PartitionTwo, PolytopeError> {
    check_contained(parent, &[first, second])?;
    let wall = common_face(first, second)?;
    if wall.is_empty() || affine_rank(parent.dim, &wall) + 1 != parent.dim {
        return Err(PolytopeError::InvalidWall(format!("pieces do not meet in a {}-dimensional face", parent.dim - 1)));
    }
    Ok(PartitionTwo { parent: parent.clone(), first: first.clone(), second: second.clone(), wall })
}

/// A face of the subdivision at which the face count fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemistabilityViolation {
    pub face: Vec<Point>,
    pub face_dim: usize,
    pub carrier_dim: usize,
    pub count: usize,
    pub required: usize,
}

impl fmt::Display for SemistabilityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pts: Vec<String> = self.face.iter().map(|p| fmt_point(p)).collect();
        write!(
            f,
            "{}-face {{{}}} with {}-dimensional carrier lies in {} pieces, expected {}",
            self.face_dim,
            pts.join(", "),
            self.carrier_dim,
            self.count,
            self.required
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemistabilityReport {
    pub semistable: bool,
    pub violation: Option<SemistabilityViolation>,
}

/// Face-count semi-stability of a subdivision.
///
/// For every face `sigma` of the pieces (vertices of the parent excluded),
/// let `theta` be the face of the parent whose relative interior contains
/// the relative interior of `sigma`. Then `sigma` must be a face of exactly
/// `dim theta - dim sigma + 1` pieces.
pub fn is_semistable(parent: &LatticePolytope, pieces: &[LatticePolytope]) -> Result<SemistabilityReport, PolytopeError> {
    if pieces.is_empty() {
        return Err(PolytopeError::InvalidPartition("no pieces".into()));
    }
    let refs: Vec<&LatticePolytope> = pieces.iter().collect();
    check_contained(parent, &refs)?;
    for i in 0..pieces.len() {
        for j in i + 1..pieces.len() {
            common_face(&pieces[i], &pieces[j])?;
        }
    }
    let piece_faces: Vec<BTreeSet<Vec<Point>>> = pieces.iter().map(LatticePolytope::face_vertex_sets).collect();
    let mut sigmas: BTreeMap<(usize, Vec<Point>), ()> = BTreeMap::new();
    for p in pieces {
        for f in p.faces() {
            sigmas.insert((f.dim, p.face_points(&f)), ());
        }
    }
    let parent_faces = parent.faces();
    let parent_vertices: BTreeSet<&Point> = parent.vertices.iter().collect();
    for ((l, sigma), ()) in sigmas {
        if l == 0 && parent_vertices.contains(&sigma[0]) {
            continue;
        }
        let refs: Vec<&Point> = sigma.iter().collect();
        let w = centroid(parent.dim, &refs);
        let tight: Vec<usize> = (0..parent.facets.len()).filter(|&i| parent.facets[i].eval_rat(&w).is_zero()).collect();
        let k = parent_faces.iter().find(|f| f.facets == tight).map(|f| f.dim).expect("carrier face exists");
        let count = piece_faces.iter().filter(|fs| fs.contains(&sigma)).count();
        let required = k + 1 - l;
        if count != required {
            return Ok(SemistabilityReport {
                semistable: false,
                violation: Some(SemistabilityViolation { face: sigma, face_dim: l, carrier_dim: k, count, required }),
            });
        }
    }
    Ok(SemistabilityReport { semistable: true, violation: None })
}

/// Primitive integer affine form `a . y + c` vanishing on a partition's wall.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CutHyperplane {
    pub normal: Vec<Int>,
    pub constant: Int,
}

impl CutHyperplane {
    pub fn eval(&self, p: &[Int]) -> Int {
        dot(&self.normal, p) + &self.constant
    }

    /// `(a_1, ..., a_n, a_{n+1})`.
    pub fn coefficients(&self) -> Vec<Int> {
        let mut c = self.normal.clone();
        c.push(self.constant.clone());
        c
    }

    pub fn negated(&self) -> CutHyperplane {
        CutHyperplane { normal: self.normal.iter().map(|a| -a).collect(), constant: -&self.constant }
    }

    pub fn as_halfspace(&self) -> HalfSpace {
        HalfSpace { normal: self.normal.clone(), offset: self.constant.clone() }
    }
}

impl fmt::Display for CutHyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(bool, String)> = Vec::new();
        for (i, a) in self.normal.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let mag = a.abs();
            let body = if mag.is_one() { format!("y{}", i + 1) } else { format!("{}*y{}", mag, i + 1) };
            terms.push((a.is_negative(), body));
        }
        if !self.constant.is_zero() || terms.is_empty() {
            terms.push((self.constant.is_negative(), self.constant.abs().to_string()));
        }
        for (i, (neg, body)) in terms.iter().enumerate() {
            match (i, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

/// The equation of the wall, oriented to be nonnegative on the second piece.
pub fn cut_hyperplane(p: &PartitionTwo) -> Result<CutHyperplane, PolytopeError> {
    let n = p.parent.dim;
    let refs: Vec<&Point> = p.wall.iter().collect();
    let k = kernel_lattice(&difference_matrix(n, refs.iter().copied()));
    if p.wall.is_empty() || k.rank() != 1 {
        return Err(PolytopeError::InvalidWall("wall does not span a hyperplane".into()));
    }
    let normal = k.basis()[0].clone();
    let constant = -dot(&normal, &p.wall[0]);
    let mut cut = CutHyperplane { normal, constant };
    if p.second.vertices.iter().any(|v| cut.eval(v).is_negative()) {
        cut = cut.negated();
    }
    if p.second.vertices.iter().any(|v| cut.eval(v).is_negative()) || p.first.vertices.iter().any(|v| cut.eval(v).is_positive()) {
        return Err(PolytopeError::InvalidWall("wall hyperplane does not separate the pieces".into()));
    }
    Ok(cut)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(dim: usize, vs: &[&[i64]]) -> LatticePolytope {
        LatticePolytope::from_vertices(dim, vs.iter().map(|v| point(v)).collect()).unwrap()
    }

    fn pentagon() -> LatticePolytope {
        poly(2, &[&[0, 0], &[2, 0], &[2, 1], &[1, 2], &[0, 2]])
    }

    fn hs(normal: &[i64], offset: i64) -> HalfSpace {
        HalfSpace { normal: point(normal), offset: Int::from(offset) }
    }

    #[test]
    fn segment_halfspaces() {
        let s = poly(1, &[&[0], &[3]]);
        assert_eq!(s.facets(), &[hs(&[-1], 3), hs(&[1], 0)]);
    }

    #[test]
    fn hull_drops_interior_points() {
        let sq = poly(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1], &[0, 0]]);
        assert_eq!(sq.facets().len(), 4);
        let p = poly(2, &[&[0, 0], &[2, 0], &[0, 2], &[2, 2], &[1, 1], &[1, 0]]);
        assert_eq!(p.vertices().len(), 4);
        assert_eq!(pentagon().facets().len(), 5);
    }

    #[test]
    fn hull_errors() {
        let line = LatticePolytope::from_vertices(2, vec![point(&[0, 0]), point(&[1, 1]), point(&[2, 2])]);
        assert_eq!(line, Err(PolytopeError::Degenerate { dim: 2 }));
        let four = LatticePolytope::from_vertices(4, vec![point(&[0, 0, 0, 0])]);
        assert_eq!(four, Err(PolytopeError::UnsupportedDimension { dim: 4 }));
    }

    #[test]
    fn cube_hull_in_three_dimensions() {
        let mut vs = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    vs.push(point(&[x, y, z]));
                }
            }
        }
        vs.push(point(&[0, 1, 1]));
        let c = LatticePolytope::from_vertices(3, vs).unwrap();
        assert_eq!(c.facets().len(), 6);
        assert_eq!(c.vertices().len(), 8);
        let faces = c.faces();
        let count = |d| faces.iter().filter(|f| f.dim == d).count();
        assert_eq!((count(0), count(1), count(2), count(3)), (8, 12, 6, 1));
        assert_eq!(c.normalized_volume(), Int::from(6));
        assert!(c.is_smooth());
    }

    #[test]
    fn vh_cross_validation() {
        let vs = vec![point(&[0, 0]), point(&[1, 0]), point(&[0, 1])];
        let good = vec![hs(&[1, 0], 0), hs(&[0, 1], 0), hs(&[-1, -1], 1)];
        let t = LatticePolytope::from_vh(2, vs.clone(), good).unwrap();
        assert_eq!(t, poly(2, &[&[0, 0], &[1, 0], &[0, 1]]));
        let bad = vec![hs(&[1, 0], 0), hs(&[0, 1], 0), hs(&[-1, -1], 2)];
        assert!(matches!(LatticePolytope::from_vh(2, vs, bad), Err(PolytopeError::Inconsistent(_))));
    }

    #[test]
    fn lattice_points_canonical_order() {
        let s = poly(1, &[&[0], &[3]]);
        assert_eq!(s.lattice_points(), vec![point(&[0]), point(&[1]), point(&[2]), point(&[3])]);
        let expected: Vec<Point> = [[0, 0], [1, 0], [2, 0], [0, 1], [1, 1], [2, 1], [0, 2], [1, 2]].iter().map(|p| point(p)).collect();
        assert_eq!(pentagon().lattice_points(), expected);
        assert_eq!(pentagon().lattice_points_sequential(), expected);
        let simplex = poly(2, &[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(simplex.lattice_points(), vec![point(&[0, 0]), point(&[1, 0]), point(&[0, 1])]);
    }

    #[test]
    fn face_counts() {
        let count = |p: &LatticePolytope| {
            let f = p.faces();
            (0..=p.dim()).map(|d| f.iter().filter(|x| x.dim == d).count()).collect::<Vec<_>>()
        };
        assert_eq!(count(&poly(1, &[&[0], &[3]])), vec![2, 1]);
        assert_eq!(count(&poly(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])), vec![4, 4, 1]);
        assert_eq!(count(&pentagon()), vec![5, 5, 1]);
    }

    #[test]
    fn face_witness_is_relative_interior() {
        let p = pentagon();
        for f in p.faces() {
            for (i, h) in p.facets().iter().enumerate() {
                let v = h.eval_rat(&f.witness);
                if f.facets.contains(&i) {
                    assert!(v.is_zero());
                } else {
                    assert!(v.is_positive());
                }
            }
        }
    }

    #[test]
    fn smoothness() {
        assert!(poly(1, &[&[0], &[3]]).is_smooth());
        assert!(pentagon().is_smooth());
        assert!(!poly(2, &[&[0, 0], &[1, 0], &[0, 2]]).is_smooth());
    }

    #[test]
    fn volumes() {
        assert_eq!(pentagon().normalized_volume(), Int::from(7));
        assert_eq!(poly(1, &[&[0], &[3]]).normalized_volume(), Int::from(3));
    }

    #[test]
    fn segment_partitions() {
        let d = poly(1, &[&[0], &[3]]);
        let p = validate_partition(&d, &poly(1, &[&[0], &[1]]), &poly(1, &[&[1], &[3]])).unwrap();
        assert_eq!(p.wall, vec![point(&[1])]);
        let err = validate_partition(&d, &poly(1, &[&[0], &[2]]), &poly(1, &[&[1], &[3]])).unwrap_err();
        assert_eq!(err, PolytopeError::InvalidPartition("pieces overlap".into()));
        let gap = validate_partition(&d, &poly(1, &[&[0], &[1]]), &poly(1, &[&[2], &[3]])).unwrap_err();
        assert_eq!(gap, PolytopeError::InvalidPartition("pieces leave a gap".into()));
    }

    #[test]
    fn pentagon_partition_and_cut() {
        let d = pentagon();
        let a = poly(2, &[&[0, 0], &[2, 0], &[2, 1], &[0, 1]]);
        let b = poly(2, &[&[0, 1], &[2, 1], &[1, 2], &[0, 2]]);
        let p = validate_partition(&d, &a, &b).unwrap();
        assert_eq!(p.wall, vec![point(&[0, 1]), point(&[2, 1])]);
        let cut = cut_hyperplane(&p).unwrap();
        assert_eq!(cut.coefficients(), point(&[0, 1, -1]));
        assert_eq!(cut.to_string(), "y2 - 1");
        assert_eq!(cut_hyperplane(&p.swapped()).unwrap(), cut.negated());
    }

    #[test]
    fn twisted_cubic_cut() {
        let d = poly(1, &[&[0], &[3]]);
        let p = validate_partition(&d, &poly(1, &[&[0], &[1]]), &poly(1, &[&[1], &[3]])).unwrap();
        let cut = cut_hyperplane(&p).unwrap();
        assert_eq!(cut.coefficients(), point(&[1, -1]));
        assert_eq!(cut_hyperplane(&p.swapped()).unwrap().coefficients(), point(&[-1, 1]));
    }

    #[test]
    fn semistability_examples() {
        let d = poly(1, &[&[0], &[3]]);
        let pieces = vec![poly(1, &[&[0], &[1]]), poly(1, &[&[1], &[3]])];
        assert!(is_semistable(&d, &pieces).unwrap().semistable);
        assert!(is_semistable(&d, std::slice::from_ref(&d)).unwrap().semistable);

        let big = poly(2, &[&[0, 0], &[2, 0], &[0, 2], &[2, 2]]);
        let squares: Vec<LatticePolytope> = [(0, 0), (1, 0), (0, 1), (1, 1)]
            .iter()
            .map(|&(x, y)| poly(2, &[&[x, y], &[x + 1, y], &[x, y + 1], &[x + 1, y + 1]]))
            .collect();
        let r = is_semistable(&big, &squares).unwrap();
        assert!(!r.semistable);
        let v = r.violation.unwrap();
        assert_eq!((v.face.clone(), v.face_dim, v.carrier_dim, v.count, v.required), (vec![point(&[1, 1])], 0, 2, 4, 3));
    }

    #[test]
    fn semistability_rejects_non_subdivisions() {
        let d = poly(1, &[&[0], &[2]]);
        let half = poly(1, &[&[0], &[1]]);
        assert!(is_semistable(&d, &[half.clone(), half]).is_err());
        // two triangles meeting along a diagonal of different lengths
        let sq = poly(2, &[&[0, 0], &[2, 0], &[0, 2], &[2, 2]]);
        let bad = vec![
            poly(2, &[&[0, 0], &[2, 0], &[0, 2]]),
            poly(2, &[&[2, 0], &[2, 2], &[0, 2]]),
        ];
        assert!(is_semistable(&sq, &bad).unwrap().semistable);
        let overlap = vec![poly(2, &[&[0, 0], &[2, 0], &[2, 2]]), poly(2, &[&[0, 0], &[2, 0], &[0, 2]])];
        assert!(is_semistable(&sq, &overlap).is_err());
    }

    #[test]
    fn split_along_cut() {
        let (a, b) = pentagon().split(&hs(&[0, 1], -1)).unwrap();
        assert_eq!(a, poly(2, &[&[0, 0], &[2, 0], &[2, 1], &[0, 1]]));
        assert_eq!(b, poly(2, &[&[0, 1], &[2, 1], &[1, 2], &[0, 2]]));
        // a cut through a non-lattice point
        assert!(poly(2, &[&[0, 0], &[1, 0], &[0, 1]]).split(&hs(&[2, 0], -1)).is_none());
    }
}
