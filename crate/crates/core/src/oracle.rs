//! Brute-force certificates that check the closed-form results against
//! exhaustive computation on small instances.
//!
//! Nothing here reuses the structural shortcuts of the other modules:
//! membership is decided facet by facet, faces come from intersecting
//! facet vertex sets, and dimensions from exact ranks.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;
use num_traits::{One, Signed, Zero};

use crate::birkhoff;
use crate::budget::Budget;
use crate::counting;
use crate::error::{Error, Result};
use crate::lattice::{Face, FaceLattice};
use crate::linalg::{affine_dimension, rank_int};
use crate::minkowski;
use crate::nestedsets;
use crate::parking::{enumerate_parking_functions, is_parking_function, BVector, Int, Point};
use crate::polymatroid;
use crate::polytope::{self, FacetDescriptor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CertificateKind {
    VertexRank,
    FacetTightness,
    HullContainment,
    FaceLatticeMatch,
    DiameterMatch,
    LatticeCount,
    RouteAgreement,
    GeneralizedPermutahedron,
    SignedMinkowski,
    CircuitWalk,
    ProjectionTheorem,
}

impl CertificateKind {
    pub fn name(&self) -> &'static str {
        match self {
            CertificateKind::VertexRank => "vertex_rank",
            CertificateKind::FacetTightness => "facet_tightness",
            CertificateKind::HullContainment => "hull_containment",
            CertificateKind::FaceLatticeMatch => "face_lattice_match",
            CertificateKind::DiameterMatch => "diameter_match",
            CertificateKind::LatticeCount => "lattice_count",
            CertificateKind::RouteAgreement => "route_agreement",
            CertificateKind::GeneralizedPermutahedron => "generalized_permutahedron",
            CertificateKind::SignedMinkowski => "signed_minkowski",
            CertificateKind::CircuitWalk => "circuit_walk",
            CertificateKind::ProjectionTheorem => "projection",
        }
    }
}

impl fmt::Display for CertificateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A failed certificate always carries a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub passed: bool,
    pub summary: String,
    pub witness: Option<String>,
}

impl Certificate {
    pub fn pass(kind: CertificateKind, summary: impl Into<String>) -> Self {
        Certificate {
            kind,
            passed: true,
            summary: summary.into(),
            witness: None,
        }
    }

    pub fn fail(kind: CertificateKind, summary: impl Into<String>, witness: impl Into<String>) -> Self {
        Certificate {
            kind,
            passed: false,
            summary: summary.into(),
            witness: Some(witness.into()),
        }
    }

    fn from_check(
        kind: CertificateKind,
        summary: impl Into<String>,
        witness: Option<String>,
    ) -> Self {
        match witness {
            None => Certificate::pass(kind, summary),
            Some(w) => Certificate::fail(kind, summary, w),
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "pass" } else { "FAIL" };
        write!(f, "{status} {}: {}", self.kind, self.summary)?;
        if let Some(w) = &self.witness {
            write!(f, " [{w}]")?;
        }
        Ok(())
    }
}

/// Every facet inequality evaluated explicitly.
pub fn satisfies_all_facets(b: &BVector, x: &Point) -> Option<FacetDescriptor> {
    polytope::facets(b)
        .into_iter()
        .find(|f| f.slack(b, &x.0).is_negative())
}

fn active_facets(b: &BVector, x: &Point) -> Vec<FacetDescriptor> {
    polytope::facets(b)
        .into_iter()
        .filter(|f| f.slack(b, &x.0).is_zero())
        .collect()
}

fn list(facets: &[FacetDescriptor]) -> String {
    facets
        .iter()
        .map(|f| f.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// A point is a vertex when it satisfies every facet and the normals of
/// the facets through it span the space.
pub fn certify_vertex(b: &BVector, x: &Point) -> Result<Certificate> {
    b.check_len(x.len())?;
    let kind = CertificateKind::VertexRank;
    if let Some(f) = satisfies_all_facets(b, x) {
        return Ok(Certificate::fail(kind, format!("{x} infeasible"), format!("violates {f}")));
    }
    let active = active_facets(b, x);
    let normals: Vec<Vec<Int>> = active.iter().map(|f| f.normal(b.n())).collect();
    let r = rank_int(&normals);
    let summary = format!("{x}: active {{{}}} rank {r}", list(&active));
    Ok(if r == b.n() {
        Certificate::pass(kind, summary)
    } else {
        Certificate::fail(kind, summary, format!("rank {r} < {}", b.n()))
    })
}

/// Checks that the parking functions satisfy every facet, that each listed
/// vertex is a parking function with a full-rank active set, and that each
/// facet is tight on `n` affinely independent listed vertices. Together
/// these show the convex hull of the parking functions is exactly the
/// polytope cut out by the facets.
pub fn certify_hull(b: &BVector, budget: &Budget) -> Result<Vec<Certificate>> {
    let n = b.n();
    let parking = enumerate_parking_functions(b, budget)?;
    let outside = parking
        .iter()
        .find_map(|p| satisfies_all_facets(b, p).map(|f| format!("{p} violates {f}")));
    let containment = Certificate::from_check(
        CertificateKind::HullContainment,
        format!("{} parking functions inside every facet", parking.len()),
        outside,
    );

    let verts: Vec<Point> = polytope::vertices_within(b, budget)?
        .iter()
        .map(|v| v.point(b))
        .collect();
    let mut bad_vertex = None;
    for x in &verts {
        let cert = certify_vertex(b, x)?;
        if !cert.passed {
            bad_vertex = Some(cert.summary);
            break;
        }
        if !is_parking_function(x, b)? {
            bad_vertex = Some(format!("{x} is not a parking function"));
            break;
        }
    }
    let vertex_rank = Certificate::from_check(
        CertificateKind::VertexRank,
        format!("{} vertices, each a parking function with rank-{n} active set", verts.len()),
        bad_vertex,
    );

    let facets = polytope::facets(b);
    let mut loose = None;
    for f in &facets {
        let tight: Vec<Vec<Int>> = verts
            .iter()
            .filter(|x| f.slack(b, &x.0).is_zero())
            .map(|x| x.0.clone())
            .collect();
        let dim = affine_dimension(&tight);
        if dim != n as isize - 1 {
            loose = Some(format!("{f} touches {} vertices spanning dimension {dim}", tight.len()));
            break;
        }
    }
    let tightness = Certificate::from_check(
        CertificateKind::FacetTightness,
        format!("{} facets each tight on a dimension-{} vertex set", facets.len(), n - 1),
        loose,
    );
    Ok(vec![containment, vertex_rank, tightness])
}

/// All nonempty faces: intersections of facet vertex sets (closed under
/// intersection), plus the whole polytope, ranked by affine dimension.
pub fn brute_face_lattice(b: &BVector, budget: &Budget) -> Result<FaceLattice> {
    let verts: Vec<Point> = polytope::vertices_within(b, budget)?
        .iter()
        .map(|v| v.point(b))
        .collect();
    let m = verts.len();
    let facet_sets: Vec<FixedBitSet> = polytope::facets(b)
        .iter()
        .map(|f| {
            let mut set = FixedBitSet::with_capacity(m);
            for (i, x) in verts.iter().enumerate() {
                if f.slack(b, &x.0).is_zero() {
                    set.insert(i);
                }
            }
            set
        })
        .collect();
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let mut queue: VecDeque<FixedBitSet> = VecDeque::new();
    let mut full = FixedBitSet::with_capacity(m);
    full.insert_range(..);
    seen.insert(full.clone());
    queue.push_back(full);
    while let Some(face) = queue.pop_front() {
        for f in &facet_sets {
            let mut next = face.clone();
            next.intersect_with(f);
            if next.count_ones(..) > 0 && seen.insert(next.clone()) {
                if seen.len() as u64 > budget.max_cells {
                    return Err(Error::BudgetExceeded {
                        what: "face enumeration",
                        required: format!("more than {}", budget.max_cells),
                        limit: budget.max_cells,
                    });
                }
                queue.push_back(next);
            }
        }
    }
    let faces = seen
        .into_iter()
        .map(|set| {
            let pts: Vec<Vec<Int>> = set.ones().map(|i| verts[i].0.clone()).collect();
            Face {
                rank: affine_dimension(&pts) as usize,
                vertices: set,
            }
        })
        .collect();
    Ok(FaceLattice::new(m, faces))
}

/// Integer points of the box `[1, S_n]^n` that lie in the polytope.
pub fn count_lattice_points(b: &BVector, budget: &Budget) -> Result<Int> {
    let n = b.n();
    let top = b.partial_sum(n);
    budget.check_cells("lattice-point box", &num_traits::pow(top.clone(), n))?;
    let mut count = Int::zero();
    let mut x = vec![Int::one(); n];
    loop {
        if polytope::contains_point(b, &Point(x.clone()))? {
            count += 1;
        }
        let Some(i) = (0..n).rev().find(|&i| x[i] < top) else {
            break;
        };
        x[i] += 1;
        for c in x[i + 1..].iter_mut() {
            *c = Int::one();
        }
    }
    Ok(count)
}

/// Largest BFS eccentricity.
pub fn bfs_diameter(adjacency: &[Vec<usize>]) -> Result<usize> {
    let mut diameter = 0;
    for source in 0..adjacency.len() {
        let mut dist = vec![usize::MAX; adjacency.len()];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &w in &adjacency[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if dist.contains(&usize::MAX) {
            return Err(Error::Disconnected);
        }
        diameter = diameter.max(dist.into_iter().max().unwrap_or(0));
    }
    Ok(diameter)
}

/// The nested-set lattice against the brute-force lattice (same vertex
/// indexing, so identical vertex-set families mean isomorphic lattices),
/// plus the order reversal between nested sets and faces.
pub fn certify_face_lattice(b: &BVector, budget: &Budget) -> Result<Certificate> {
    let kind = CertificateKind::FaceLatticeMatch;
    let brute = brute_face_lattice(b, budget)?;
    let nested = nestedsets::face_lattice(b, budget)?;
    let sizes = brute.rank_sizes();
    let summary = format!("rank sizes {sizes:?}");
    let identity: Vec<usize> = (0..brute.vertex_count()).collect();
    let f: Vec<Int> = counting::f_vector(b);
    let witness = if !nested.lattice.is_isomorphic_via(&brute, &identity) {
        Some(format!(
            "nested-set faces {:?} differ from brute-force faces {sizes:?}",
            nested.lattice.rank_sizes()
        ))
    } else if !nested.order_is_reversed() {
        Some("nested-set inclusion is not reverse face inclusion".to_string())
    } else if sizes.iter().map(|&s| Int::from(s)).collect::<Vec<_>>() != f {
        Some(format!("f-vector {f:?}"))
    } else {
        None
    };
    Ok(Certificate::from_check(kind, summary, witness))
}

pub fn certify_diameter(b: &BVector, budget: &Budget) -> Result<Certificate> {
    let graph = polytope::edge_graph(b, budget)?;
    let bfs = bfs_diameter(&graph.adjacency)?;
    let formula = polymatroid::combinatorial_diameter(b);
    let summary = format!("BFS diameter {bfs}, formula {formula}");
    Ok(Certificate::from_check(
        CertificateKind::DiameterMatch,
        summary,
        (bfs != formula).then(|| format!("{bfs} != {formula}")),
    ))
}

/// h-polynomial by formula and by descents; f-vector by Stirling sums and
/// by `h(t + 1)`; palindromic h; Euler relation.
pub fn certify_routes(b: &BVector, budget: &Budget) -> Result<Certificate> {
    budget.check_vertices("vertex enumeration", &polytope::vertex_count(b))?;
    let h = counting::h_polynomial(b);
    let h2 = counting::h_polynomial_by_descents(b);
    let f = counting::f_vector(b);
    let f2 = counting::f_from_h(&h, b.n());
    let summary = format!("h = {h}");
    let witness = if h != h2 {
        Some(format!("descent route gives {h2}"))
    } else if f != f2 {
        Some(format!("f {f:?} vs h-transform {f2:?}"))
    } else if !h.is_palindromic() {
        Some("h is not palindromic".to_string())
    } else if counting::euler_characteristic(&f) != Int::one() {
        Some("alternating f-sum is not 1".to_string())
    } else if f[0] != polytope::vertex_count(b) || f[b.n() - 1] != polytope::facet_count(b) {
        Some("f_0 or f_{n-1} disagrees with the vertex or facet count".to_string())
    } else {
        None
    };
    Ok(Certificate::from_check(CertificateKind::RouteAgreement, summary, witness))
}

pub fn certify_lattice_count(b: &BVector, budget: &Budget) -> Result<Certificate> {
    let points = count_lattice_points(b, budget)?;
    let parking = enumerate_parking_functions(b, budget)?.len();
    Ok(Certificate::from_check(
        CertificateKind::LatticeCount,
        format!("{points} lattice points, {parking} parking functions"),
        (points < Int::from(parking)).then(|| "fewer lattice points than parking functions".into()),
    ))
}

pub fn certify_generalized_permutahedron(b: &BVector, budget: &Budget) -> Result<Certificate> {
    let edges = minkowski::lifted_edges(b, budget)?;
    let bad = edges
        .iter()
        .find(|e| e.direction.is_none())
        .map(|e| format!("{:?} -> {:?}", e.from.0, e.to.0));
    Ok(Certificate::from_check(
        CertificateKind::GeneralizedPermutahedron,
        format!("{} lifted edges along e_i - e_j", edges.len()),
        bad,
    ))
}

pub fn certify_signed_minkowski(
    b: &BVector,
    directions: usize,
    seed: u64,
    budget: &Budget,
) -> Result<Certificate> {
    let dirs = minkowski::random_directions(b.n() + 1, directions, seed);
    let report = minkowski::verify_signed_minkowski(b, &dirs, budget)?;
    Ok(Certificate::from_check(
        CertificateKind::SignedMinkowski,
        format!("{}/{} support checks (seed {seed})", report.passed, report.checked),
        report.failure.map(|w| format!("direction {w:?}")),
    ))
}

/// Walks between every ordered pair of vertices: bounded by
/// `n - min(k)`, every step maximal, every arrival integral and feasible.
pub fn certify_circuit_walks(b: &BVector, budget: &Budget) -> Result<Certificate> {
    let n = b.n();
    let count = polytope::vertex_count(b);
    budget.check_cells("vertex pairs", &(&count * &count))?;
    let verts = polytope::vertices_within(b, budget)?;
    let mut longest = 0;
    let mut witness = None;
    'outer: for u in &verts {
        for v in &verts {
            let walk = polymatroid::circuit_walk(b, u, v)?;
            longest = longest.max(walk.len());
            let bound = n - u.k().min(v.k());
            if walk.len() > bound {
                witness = Some(format!("{} -> {}: {} steps", u.point(b), v.point(b), walk.len()));
                break 'outer;
            }
            if !polymatroid::walk_is_maximal_and_feasible(b, &walk)? {
                witness = Some(format!("{} -> {}: non-maximal step", u.point(b), v.point(b)));
                break 'outer;
            }
        }
    }
    Ok(Certificate::from_check(
        CertificateKind::CircuitWalk,
        format!("{} pairs, longest walk {longest}", verts.len() * verts.len()),
        witness,
    ))
}

pub fn certify_projection(b: &BVector, budget: &Budget) -> Result<Certificate> {
    let system = birkhoff::build_relaxed_partition(b, budget)?;
    let r = birkhoff::verify_projection(&system, budget)?;
    let summary = format!(
        "{} feasible 0/1 points onto {} parking functions, {} basic solutions",
        r.zero_one_points, r.parking_functions, r.basic_solutions
    );
    let witness = if !r.projections_match {
        Some("0/1 images differ from the parking functions".to_string())
    } else if let Some(x) = &r.fractional_basic_solution {
        Some(format!("fractional basic solution {}", fmt_rationals(x)))
    } else if !r.vertices_covered {
        Some("a vertex is not the image of a 0/1 point".to_string())
    } else {
        None
    };
    Ok(Certificate::from_check(CertificateKind::ProjectionTheorem, summary, witness))
}

fn fmt_rationals(x: &[crate::linalg::Rational]) -> String {
    let parts: Vec<String> = x.iter().map(|c| c.to_string()).collect();
    format!("({})", parts.join(","))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyLevel {
    Quick,
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BatteryReport {
    pub certificates: Vec<Certificate>,
    /// Checks left out, with the reason.
    pub skipped: Vec<(CertificateKind, String)>,
}

impl BatteryReport {
    pub fn passed(&self) -> bool {
        self.certificates.iter().all(|c| c.passed)
    }
}

/// The projection check enumerates square subsystems; beyond this many it
/// is skipped rather than run.
const PROJECTION_SEARCH_LIMIT: u64 = 200_000;

/// Runs every certificate. `Quick` covers vertices, the counting routes,
/// diameters and the Minkowski checks; `Full` adds the hull, face lattice,
/// lattice count, circuit walks and the projection check.
pub fn run_battery(
    b: &BVector,
    level: VerifyLevel,
    seed: u64,
    budget: &Budget,
) -> Result<BatteryReport> {
    let mut certificates = Vec::new();
    let mut skipped = Vec::new();
    let verts = polytope::vertices_within(b, budget)?;
    let mut bad = None;
    for v in &verts {
        let c = certify_vertex(b, &v.point(b))?;
        if !c.passed {
            bad = Some(c.summary);
            break;
        }
    }
    certificates.push(Certificate::from_check(
        CertificateKind::VertexRank,
        format!("{} vertices certified", verts.len()),
        bad,
    ));
    certificates.push(certify_routes(b, budget)?);
    certificates.push(certify_diameter(b, budget)?);
    certificates.push(certify_generalized_permutahedron(b, budget)?);
    let directions = if level == VerifyLevel::Full { 200 } else { 50 };
    certificates.push(certify_signed_minkowski(b, directions, seed, budget)?);
    if level == VerifyLevel::Full {
        certificates.extend(certify_hull(b, budget)?);
        certificates.push(certify_face_lattice(b, budget)?);
        certificates.push(certify_lattice_count(b, budget)?);
        certificates.push(certify_circuit_walks(b, budget)?);
        let system = birkhoff::build_relaxed_partition(b, budget)?;
        let size = birkhoff::basic_solution_search_size(&system);
        if size > Int::from(PROJECTION_SEARCH_LIMIT) {
            skipped.push((
                CertificateKind::ProjectionTheorem,
                format!("{size} subsystems exceed {PROJECTION_SEARCH_LIMIT}"),
            ));
        } else {
            certificates.push(certify_projection(b, budget)?);
        }
    }
    Ok(BatteryReport {
        certificates,
        skipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(v: &[i64]) -> BVector {
        BVector::new(v.iter().copied()).unwrap()
    }

    fn pt(v: &[i64]) -> Point {
        Point::from_i64s(v)
    }

    #[test]
    fn vertex_certificates() {
        let b = bv(&[2, 3, 4]);
        let c = certify_vertex(&b, &pt(&[2, 5, 9])).unwrap();
        assert!(c.passed);
        assert!(c.summary.contains("U{3} U{2,3} U{1,2,3}"), "{}", c.summary);
        assert!(certify_vertex(&b, &pt(&[1, 1, 1])).unwrap().passed);
        let c = certify_vertex(&bv(&[1, 2, 3]), &pt(&[2, 2, 2])).unwrap();
        assert!(!c.passed);
        assert!(c.summary.contains("active {} rank 0"), "{}", c.summary);
        assert!(c.witness.is_some());
    }

    #[test]
    fn hull_certificates() {
        let budget = Budget::default();
        for b in [bv(&[1, 2, 3]), bv(&[2, 3, 4]), bv(&[1, 1, 1, 1])] {
            for c in certify_hull(&b, &budget).unwrap() {
                assert!(c.passed, "{b}: {c}");
            }
        }
    }

    #[test]
    fn brute_lattices() {
        let budget = Budget::default();
        assert_eq!(brute_face_lattice(&bv(&[1, 2, 3]), &budget).unwrap().rank_sizes(), vec![10, 15, 7, 1]);
        assert_eq!(brute_face_lattice(&bv(&[2, 3, 4]), &budget).unwrap().rank_sizes(), vec![16, 24, 10, 1]);
        assert_eq!(brute_face_lattice(&bv(&[2]), &budget).unwrap().rank_sizes(), vec![2, 1]);
    }

    #[test]
    fn lattice_counts() {
        let budget = Budget::default();
        let b = bv(&[1, 2, 3]);
        let points = count_lattice_points(&b, &budget).unwrap();
        let parking = enumerate_parking_functions(&b, &budget).unwrap();
        assert!(points > Int::from(parking.len()));
        assert!(polytope::contains_point(&b, &pt(&[2, 2, 2])).unwrap());
        assert!(!parking.contains(&pt(&[2, 2, 2])));
        assert!(count_lattice_points(&bv(&[1, 1, 1]), &budget).unwrap() >= Int::from(16));
        assert_eq!(count_lattice_points(&bv(&[2]), &budget).unwrap(), Int::from(2));
    }

    #[test]
    fn diameters_by_search() {
        let budget = Budget::default();
        let g = polytope::edge_graph(&bv(&[1, 2, 3]), &budget).unwrap();
        assert_eq!(bfs_diameter(&g.adjacency).unwrap(), 3);
        let g = polytope::edge_graph(&bv(&[2, 3, 4]), &budget).unwrap();
        assert_eq!(bfs_diameter(&g.adjacency).unwrap(), 4);
        assert_eq!(bfs_diameter(&[vec![1], vec![0]]).unwrap(), 1);
        assert_eq!(bfs_diameter(&[vec![], vec![]]), Err(Error::Disconnected));
    }

    #[test]
    fn full_battery_passes() {
        let report = run_battery(&bv(&[1, 2, 3]), VerifyLevel::Full, 1, &Budget::default()).unwrap();
        for c in &report.certificates {
            assert!(c.passed, "{c}");
        }
        let report = run_battery(&bv(&[2, 3, 4]), VerifyLevel::Quick, 1, &Budget::default()).unwrap();
        assert!(report.passed());
    }
}
