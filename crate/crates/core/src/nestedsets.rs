//! Building sets, nested sets, and the face structure of the polytope read
//! off the nested-set complex.
//!
//! Ground sets are `{0, .., m-1}`. For the polytope in dimension `n` the
//! ground set has `n + 1` elements and the extra element `n` is called the
//! apex.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::lattice::{Face, FaceLattice};
use crate::linalg::affine_dimension;
use crate::parking::{BVector, Int, Point, VertexDescriptor};
use crate::polytope::{self, FacetDescriptor};
use crate::subset::Subset;

/// A family of nonempty subsets of a ground set, kept sorted and
/// duplicate-free.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetSystem {
    ground_size: usize,
    members: Vec<Subset>,
}

impl SetSystem {
    pub fn new(ground_size: usize, members: impl IntoIterator<Item = Subset>) -> Result<Self> {
        let mut members: Vec<Subset> = members.into_iter().collect();
        for m in &members {
            if m.is_empty() || !m.is_subset_of(Subset::full(ground_size)) {
                return Err(Error::NotNested(format!(
                    "{m} is not a nonempty subset of a {ground_size}-element ground set"
                )));
            }
        }
        members.sort();
        members.dedup();
        Ok(SetSystem {
            ground_size,
            members,
        })
    }

    /// Builds from 1-based index lists, the way families are written by hand.
    pub fn from_one_based(ground_size: usize, members: &[&[usize]]) -> Result<Self> {
        let mut sets = Vec::with_capacity(members.len());
        for m in members {
            if m.contains(&0) {
                return Err(Error::Parse("indices are 1-based".into()));
            }
            sets.push(Subset::from_indices(m.iter().map(|i| i - 1)));
        }
        SetSystem::new(ground_size, sets)
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.members.binary_search(&s).is_ok()
    }

    /// Inclusion-maximal members.
    pub fn maximal(&self) -> Vec<Subset> {
        self.members
            .iter()
            .copied()
            .filter(|&s| !self.members.iter().any(|&t| t != s && s.is_subset_of(t)))
            .collect()
    }
}

impl fmt::Display for SetSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "}}")
    }
}

/// A candidate or certified nested set; members sorted.
pub type NestedSet = SetSystem;

/// Union-closed on intersecting pairs and containing every singleton.
pub fn is_building_set(s: &SetSystem) -> bool {
    let singletons = (0..s.ground_size).all(|i| s.contains(Subset::singleton(i)));
    singletons
        && s.members.iter().all(|&a| {
            s.members
                .iter()
                .all(|&c| a.is_disjoint(c) || s.contains(a.union(c)))
        })
}

/// Membership in `building` minus its maximal members, laminarity, and no
/// union of two or more pairwise disjoint members lying in `building`.
///
/// For a laminar family the last condition fails exactly when some member
/// `U` of the building set is the union of the family's members strictly
/// inside it, which is what is tested.
pub fn is_nested_set(candidate: &SetSystem, building: &SetSystem) -> bool {
    let maximal = building.maximal();
    let members = candidate.members();
    if candidate.ground_size != building.ground_size
        || members
            .iter()
            .any(|&m| !building.contains(m) || maximal.contains(&m))
    {
        return false;
    }
    let laminar = members.iter().enumerate().all(|(i, &a)| {
        members[i + 1..]
            .iter()
            .all(|&c| a.is_subset_of(c) || c.is_subset_of(a) || a.is_disjoint(c))
    });
    laminar
        && building.members().iter().all(|&u| {
            let inside = members
                .iter()
                .filter(|&&m| m != u && m.is_subset_of(u))
                .fold(Subset::EMPTY, |acc, &m| acc.union(m));
            inside != u
        })
}

/// `{i}` for `i < n` together with `S + apex` for every `S` in `[n]`.
pub fn building_st(n: usize) -> SetSystem {
    building_with(n, |_| true)
}

/// As [`building_st`] but without the sets `{i, apex}`.
pub fn building_pf(n: usize) -> SetSystem {
    building_with(n, |s| s.len() != 1)
}

fn building_with(n: usize, keep: impl Fn(Subset) -> bool) -> SetSystem {
    let apex = n;
    let singles = (0..n).map(Subset::singleton);
    let coned = Subset::full(n)
        .subsets()
        .filter(|&s| keep(s))
        .map(|s| s.insert(apex));
    SetSystem::new(n + 1, singles.chain(coned).collect::<Vec<_>>()).expect("valid members")
}

/// The building set whose nested-set complex describes the faces for `b`.
pub fn building_for(b: &BVector) -> SetSystem {
    if b.is_classical() {
        building_pf(b.n())
    } else {
        building_st(b.n())
    }
}

fn split_singletons(n: &SetSystem) -> (Subset, Vec<Subset>) {
    let mut singles = Subset::EMPTY;
    let mut rest = Vec::new();
    for &m in n.members() {
        if m.len() == 1 {
            singles = singles.union(m);
        } else {
            rest.push(m);
        }
    }
    (singles, rest)
}

fn is_chain(sorted: &[Subset]) -> bool {
    sorted.windows(2).all(|w| w[0].is_subset_of(w[1]) && w[0] != w[1])
}

/// Shape test for nested sets of [`building_pf`]: singletons `I` (at most
/// one other element when the apex is among them) plus a chain of sets
/// containing the apex, of size at least 3, whose smallest member contains
/// `I`.
pub fn is_nested_pf_structural(candidate: &SetSystem, n: usize) -> bool {
    if candidate.ground_size() != n + 1 {
        return false;
    }
    let apex = n;
    let full = Subset::full(n + 1);
    let (singles, chain) = split_singletons(candidate);
    if chain
        .iter()
        .any(|&a| !a.contains(apex) || a.len() < 3 || a == full)
    {
        return false;
    }
    if singles.contains(apex) && singles.len() > 2 {
        return false;
    }
    is_chain(&chain) && chain.first().is_none_or(|&a| singles.is_subset_of(a))
}

/// Shape test for nested sets of [`building_st`]: singletons `I` inside
/// `[n]` plus a chain of sets `A + apex` with `A` a proper subset of `[n]`
/// and `I` inside the smallest `A`.
pub fn is_nested_st_structural(candidate: &SetSystem, n: usize) -> bool {
    if candidate.ground_size() != n + 1 {
        return false;
    }
    let apex = n;
    let full = Subset::full(n + 1);
    let mut singles = Subset::EMPTY;
    let mut chain = Vec::new();
    for &m in candidate.members() {
        if m.len() == 1 && !m.contains(apex) {
            singles = singles.union(m);
        } else if m.contains(apex) && m != full {
            chain.push(m);
        } else {
            return false;
        }
    }
    is_chain(&chain) && chain.first().is_none_or(|&a| singles.is_subset_of(a))
}

/// All nested sets with at most `max_size` members, ordered by size and
/// then lexicographically by member list. Stops with a budget error once
/// more than `budget.max_cells` sets have been produced.
pub fn nested_complex(
    building: &SetSystem,
    max_size: usize,
    budget: &Budget,
) -> Result<Vec<NestedSet>> {
    let maximal = building.maximal();
    let pool: Vec<Subset> = building
        .members()
        .iter()
        .copied()
        .filter(|m| !maximal.contains(m))
        .collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    grow(building, &pool, 0, max_size, &mut current, &mut out, budget)?;
    out.sort_by(|a: &NestedSet, c: &NestedSet| {
        (a.len(), a.members()).cmp(&(c.len(), c.members()))
    });
    Ok(out)
}

fn grow(
    building: &SetSystem,
    pool: &[Subset],
    start: usize,
    max_size: usize,
    current: &mut Vec<Subset>,
    out: &mut Vec<NestedSet>,
    budget: &Budget,
) -> Result<()> {
    let set = SetSystem::new(building.ground_size(), current.iter().copied())?;
    out.push(set);
    if out.len() as u64 > budget.max_cells {
        return Err(Error::BudgetExceeded {
            what: "nested-set enumeration",
            required: format!("more than {}", budget.max_cells),
            limit: budget.max_cells,
        });
    }
    if current.len() == max_size {
        return Ok(());
    }
    for i in start..pool.len() {
        current.push(pool[i]);
        let candidate = SetSystem::new(building.ground_size(), current.iter().copied())?;
        if is_nested_set(&candidate, building) {
            grow(building, pool, i + 1, max_size, current, out, budget)?;
        }
        current.pop();
    }
    Ok(())
}

/// The facet attached to a member of the building set: `{i}` gives the
/// lower facet `x_i >= 1`, `S + apex` gives the upper facet on `[n] - S`.
pub fn facet_of_member(n: usize, member: Subset) -> Result<FacetDescriptor> {
    let apex = n;
    if member.contains(apex) {
        let rest = Subset::full(n).difference(member);
        if rest.is_empty() {
            return Err(Error::NotNested(format!(
                "{member} is the whole ground set"
            )));
        }
        Ok(FacetDescriptor::Upper(rest))
    } else if member.len() == 1 {
        Ok(FacetDescriptor::Lower(member.iter().next().expect("nonempty")))
    } else {
        Err(Error::NotNested(format!("{member} is not a building-set member")))
    }
}

/// A face with the nested set it comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceRecord {
    pub nested_set: NestedSet,
    pub facets: Vec<FacetDescriptor>,
    pub vertices: Vec<VertexDescriptor>,
    pub dim: usize,
}

fn check_nested(b: &BVector, nested: &NestedSet) -> Result<SetSystem> {
    let building = building_for(b);
    if !is_nested_set(nested, &building) {
        return Err(Error::NotNested(format!(
            "{nested} is not nested for {building}"
        )));
    }
    Ok(building)
}

/// The face cut out by the facets of the members of `nested`, with its
/// vertices listed in vertex order.
pub fn face_from_nested_set(b: &BVector, nested: &NestedSet) -> Result<FaceRecord> {
    check_nested(b, nested)?;
    let n = b.n();
    let facets = nested
        .members()
        .iter()
        .map(|&m| facet_of_member(n, m))
        .collect::<Result<Vec<_>>>()?;
    let vertices: Vec<VertexDescriptor> = polytope::vertices(b)
        .into_iter()
        .filter(|v| {
            let x = v.point(b);
            facets.iter().all(|f| num_traits::Zero::is_zero(&f.slack(b, &x.0)))
        })
        .collect();
    let mut sorted_facets = facets;
    sorted_facets.sort();
    Ok(FaceRecord {
        nested_set: nested.clone(),
        facets: sorted_facets,
        vertices,
        dim: n - nested.len(),
    })
}

/// Places the vertex of a maximal nested set directly: a coordinate whose
/// singleton is in the set gets 1; otherwise it gets `S_m`, where `m`
/// counts the non-apex elements of the smallest member containing it (the
/// whole ground set if none does).
pub fn vertex_from_maximal_nested_set(b: &BVector, nested: &NestedSet) -> Result<VertexDescriptor> {
    check_nested(b, nested)?;
    let n = b.n();
    if nested.len() != n {
        return Err(Error::NotNested(format!(
            "{nested} has {} members, a maximal nested set has {n}",
            nested.len()
        )));
    }
    let coords: Vec<Int> = (0..n)
        .map(|p| {
            if nested.contains(Subset::singleton(p)) {
                return Int::from(1);
            }
            let smallest = nested
                .members()
                .iter()
                .filter(|m| m.contains(p))
                .min_by_key(|m| m.len())
                .copied()
                .unwrap_or(Subset::full(n + 1));
            b.partial_sum(smallest.remove(n).len())
        })
        .collect();
    let x = Point(coords);
    VertexDescriptor::from_point(b, &x)
        .ok_or_else(|| Error::NotAVertex(format!("{x} placed from {nested}")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CombinatorialType {
    ClassicalPF,
    Stellohedron,
}

impl fmt::Display for CombinatorialType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CombinatorialType::ClassicalPF => write!(f, "classical parking-function polytope"),
            CombinatorialType::Stellohedron => write!(f, "stellohedron"),
        }
    }
}

pub fn combinatorial_type(b: &BVector) -> CombinatorialType {
    if b.is_classical() {
        CombinatorialType::ClassicalPF
    } else {
        CombinatorialType::Stellohedron
    }
}

/// Faces indexed by nested sets, alongside the lattice of their vertex sets.
#[derive(Clone, Debug)]
pub struct NestedFaceLattice {
    pub vertices: Vec<VertexDescriptor>,
    pub records: Vec<FaceRecord>,
    /// `records[i]` has vertex set `vertex_sets[i]`.
    pub vertex_sets: Vec<FixedBitSet>,
    pub lattice: FaceLattice,
}

impl NestedFaceLattice {
    /// Inclusion of nested sets must be reverse inclusion of faces.
    pub fn order_is_reversed(&self) -> bool {
        let k = self.records.len();
        (0..k).all(|i| {
            (0..k).all(|j| {
                let nested_le = self.records[i]
                    .nested_set
                    .members()
                    .iter()
                    .all(|&m| self.records[j].nested_set.contains(m));
                let face_ge = self.vertex_sets[j].is_subset(&self.vertex_sets[i]);
                nested_le == face_ge
            })
        })
    }
}

/// Every nonempty face, built from the nested-set complex. Face ranks are
/// `n - |N|`, and are checked against the affine dimension of the vertex
/// set.
pub fn face_lattice(b: &BVector, budget: &Budget) -> Result<NestedFaceLattice> {
    let n = b.n();
    let vertices = polytope::vertices_within(b, budget)?;
    let points: Vec<Point> = vertices.iter().map(|v| v.point(b)).collect();
    let building = building_for(b);
    let complex = nested_complex(&building, n, budget)?;

    let mut facet_sets: HashMap<Subset, FixedBitSet> = HashMap::new();
    for &m in building.members() {
        let Ok(facet) = facet_of_member(n, m) else { continue };
        let mut set = FixedBitSet::with_capacity(vertices.len());
        for (i, x) in points.iter().enumerate() {
            if num_traits::Zero::is_zero(&facet.slack(b, &x.0)) {
                set.insert(i);
            }
        }
        facet_sets.insert(m, set);
    }

    let mut records = Vec::with_capacity(complex.len());
    let mut vertex_sets = Vec::with_capacity(complex.len());
    let mut faces = Vec::with_capacity(complex.len());
    for nested in complex {
        let mut set = FixedBitSet::with_capacity(vertices.len());
        set.insert_range(..);
        for m in nested.members() {
            set.intersect_with(&facet_sets[m]);
        }
        let dim = n - nested.len();
        let pts: Vec<Vec<Int>> = set.ones().map(|i| points[i].0.clone()).collect();
        if affine_dimension(&pts) != dim as isize {
            return Err(Error::NotNested(format!(
                "{nested} gives a face of dimension {} instead of {dim}",
                affine_dimension(&pts)
            )));
        }
        let mut facets = nested
            .members()
            .iter()
            .map(|&m| facet_of_member(n, m))
            .collect::<Result<Vec<_>>>()?;
        facets.sort();
        records.push(FaceRecord {
            nested_set: nested,
            facets,
            vertices: set.ones().map(|i| vertices[i].clone()).collect(),
            dim,
        });
        faces.push(Face {
            rank: dim,
            vertices: set.clone(),
        });
        vertex_sets.push(set);
    }
    let lattice = FaceLattice::new(vertices.len(), faces);
    Ok(NestedFaceLattice {
        vertices,
        records,
        vertex_sets,
        lattice,
    })
}

/// For two b-vectors of the same dimension and regime, the vertex
/// correspondence obtained by sending each maximal nested set to its vertex
/// in both polytopes. Returns `map` with `map[i]` the index (in
/// [`polytope::vertices`] order) of the image of vertex `i`.
pub fn vertex_correspondence(b: &BVector, other: &BVector) -> Result<Vec<usize>> {
    if b.n() != other.n() {
        return Err(Error::DimensionMismatch {
            expected: b.n(),
            found: other.n(),
        });
    }
    if combinatorial_type(b) != combinatorial_type(other) {
        return Err(Error::InvalidBVector(format!(
            "{b} and {other} have different combinatorial types"
        )));
    }
    let n = b.n();
    let left = polytope::vertices(b);
    let right = polytope::vertices(other);
    let right_index: HashMap<&VertexDescriptor, usize> =
        right.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let left_index: HashMap<&VertexDescriptor, usize> =
        left.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut map = vec![usize::MAX; left.len()];
    for nested in nested_complex(&building_for(b), n, &Budget::unlimited())? {
        if nested.len() != n {
            continue;
        }
        let u = vertex_from_maximal_nested_set(b, &nested)?;
        let w = vertex_from_maximal_nested_set(other, &nested)?;
        map[left_index[&u]] = right_index[&w];
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(v: &[i64]) -> BVector {
        BVector::new(v.iter().copied()).unwrap()
    }

    fn sys(m: usize, members: &[&[usize]]) -> SetSystem {
        SetSystem::from_one_based(m, members).unwrap()
    }

    #[test]
    fn building_set_axioms() {
        let example = sys(4, &[&[1], &[2], &[3], &[4], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4], &[1, 2, 3, 4]]);
        assert!(is_building_set(&example));
        assert!(is_building_set(&sys(2, &[&[1], &[2]])));
        assert!(!is_building_set(&sys(2, &[&[1], &[1, 2]])));
        assert_eq!(building_pf(3), example);
        for n in 1..=5 {
            assert!(is_building_set(&building_pf(n)));
            assert!(is_building_set(&building_st(n)));
            assert_eq!(building_st(n).len(), n + (1 << n));
            assert_eq!(building_pf(n).len(), (1 << n));
        }
    }

    #[test]
    fn nested_examples() {
        let building = building_pf(3);
        assert!(is_nested_set(&sys(4, &[&[1], &[2], &[1, 2, 4]]), &building));
        assert!(!is_nested_set(&sys(4, &[&[1], &[2], &[3], &[4]]), &building));
        assert!(is_nested_set(&sys(4, &[]), &building));
        assert!(!is_nested_set(&sys(4, &[&[1, 2, 3, 4]]), &building));
    }

    #[test]
    fn complex_sizes() {
        let budget = Budget::default();
        let complex = nested_complex(&building_pf(3), 3, &budget).unwrap();
        let mut sizes = [0; 4];
        for s in &complex {
            sizes[s.len()] += 1;
        }
        assert_eq!(sizes, [1, 7, 15, 10]);
        let maximal = nested_complex(&building_st(3), 3, &budget)
            .unwrap()
            .into_iter()
            .filter(|s| s.len() == 3)
            .count();
        assert_eq!(maximal, 16);
    }

    #[test]
    fn maximal_nested_sets_place_vertices() {
        let b = bv(&[1, 2, 3]);
        let v = vertex_from_maximal_nested_set(&b, &sys(4, &[&[3], &[4], &[2, 3, 4]])).unwrap();
        assert_eq!(v.point(&b), Point::from_i64s(&[6, 3, 1]));
        let face = face_from_nested_set(&b, &sys(4, &[&[3], &[4], &[2, 3, 4]])).unwrap();
        assert_eq!(face.vertices, vec![v]);
        assert_eq!(face.dim, 0);
        for b in [bv(&[1, 2, 3]), bv(&[2, 3, 4]), bv(&[1, 1, 2, 1]), bv(&[2, 1, 1, 3])] {
            let complex = nested_complex(&building_for(&b), b.n(), &Budget::default()).unwrap();
            let mut placed: Vec<VertexDescriptor> = complex
                .iter()
                .filter(|s| s.len() == b.n())
                .map(|s| {
                    let v = vertex_from_maximal_nested_set(&b, s).unwrap();
                    assert_eq!(face_from_nested_set(&b, s).unwrap().vertices, vec![v.clone()]);
                    v
                })
                .collect();
            placed.sort_by_cached_key(|v| v.point(&b));
            assert_eq!(placed, polytope::vertices(&b), "{b}");
        }
    }

    #[test]
    fn six_dimensional_face() {
        let b = bv(&[1, 2, 1, 3, 2, 4]);
        let n = sys(7, &[&[1], &[3], &[1, 3, 4, 7], &[1, 2, 3, 4, 7]]);
        let face = face_from_nested_set(&b, &n).unwrap();
        assert_eq!(face.dim, 2);
        let s: Vec<i64> = (0..=6).map(|i| b.partial_sum(i).try_into().unwrap()).collect();
        let mut expect: Vec<Point> = [
            [1, s[4], 1, 1, s[5], s[6]],
            [1, s[4], 1, s[3], s[5], s[6]],
            [1, s[4], 1, 1, s[6], s[5]],
            [1, s[4], 1, s[3], s[6], s[5]],
        ]
        .iter()
        .map(|c| Point::from_i64s(c))
        .collect();
        expect.sort();
        let got: Vec<Point> = face.vertices.iter().map(|v| v.point(&b)).collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn whole_polytope_from_empty_set() {
        let b = bv(&[2, 3, 4]);
        let face = face_from_nested_set(&b, &sys(4, &[])).unwrap();
        assert_eq!(face.vertices.len(), 16);
        assert_eq!(face.dim, 3);
    }

    #[test]
    fn lattice_rank_sizes() {
        let budget = Budget::default();
        let l = face_lattice(&bv(&[1, 2, 3]), &budget).unwrap();
        assert_eq!(l.lattice.rank_sizes(), vec![10, 15, 7, 1]);
        assert!(l.order_is_reversed());
        let l = face_lattice(&bv(&[2, 3, 4]), &budget).unwrap();
        assert_eq!(l.lattice.rank_sizes(), vec![16, 24, 10, 1]);
        let l = face_lattice(&bv(&[2]), &budget).unwrap();
        assert_eq!(l.lattice.rank_sizes(), vec![2, 1]);
    }

    #[test]
    fn types() {
        assert_eq!(combinatorial_type(&bv(&[1, 2, 3])), CombinatorialType::ClassicalPF);
        assert_eq!(combinatorial_type(&bv(&[2, 3, 4])), CombinatorialType::Stellohedron);
        assert_eq!(combinatorial_type(&bv(&[1, 1, 1, 1])), CombinatorialType::ClassicalPF);
    }
}
