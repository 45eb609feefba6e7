//! Face lattices stored as families of vertex sets.

use fixedbitset::FixedBitSet;

/// A nonempty face, identified by the indices of the vertices it contains.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    pub rank: usize,
    pub vertices: FixedBitSet,
}

impl Face {
    pub fn vertex_indices(&self) -> Vec<usize> {
        self.vertices.ones().collect()
    }
}

/// Nonempty faces of a polytope ordered by inclusion of vertex sets, each
/// ranked by dimension. Faces are kept sorted by `(rank, vertex set)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceLattice {
    vertex_count: usize,
    faces: Vec<Face>,
}

impl FaceLattice {
    pub fn new(vertex_count: usize, mut faces: Vec<Face>) -> Self {
        faces.sort();
        faces.dedup();
        FaceLattice {
            vertex_count,
            faces,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Number of faces of each rank, starting at rank 0.
    pub fn rank_sizes(&self) -> Vec<usize> {
        let top = self.faces.iter().map(|f| f.rank).max().map_or(0, |r| r + 1);
        let mut sizes = vec![0; top];
        for f in &self.faces {
            sizes[f.rank] += 1;
        }
        sizes
    }

    pub fn find(&self, vertices: &FixedBitSet) -> Option<&Face> {
        self.faces.iter().find(|f| &f.vertices == vertices)
    }

    /// Checks that relabelling vertices by `map` (a bijection from this
    /// lattice's vertices to `other`'s) carries faces onto faces of equal
    /// rank. Order is inclusion of vertex sets on both sides, so this makes
    /// the map a rank-preserving poset isomorphism.
    pub fn is_isomorphic_via(&self, other: &FaceLattice, map: &[usize]) -> bool {
        if self.vertex_count != other.vertex_count
            || map.len() != self.vertex_count
            || self.faces.len() != other.faces.len()
        {
            return false;
        }
        let mut hit = FixedBitSet::with_capacity(other.vertex_count);
        for &t in map {
            if t >= other.vertex_count || hit.put(t) {
                return false;
            }
        }
        let mut images: Vec<Face> = self
            .faces
            .iter()
            .map(|f| {
                let mut image = FixedBitSet::with_capacity(other.vertex_count);
                for i in f.vertices.ones() {
                    image.insert(map[i]);
                }
                Face {
                    rank: f.rank,
                    vertices: image,
                }
            })
            .collect();
        images.sort();
        images == other.faces
    }

    /// Pairs `(i, j)` of face indices where face `i` is a facet of face `j`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, a) in self.faces.iter().enumerate() {
            for (j, c) in self.faces.iter().enumerate() {
                if c.rank == a.rank + 1 && a.vertices.is_subset(&c.vertices) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn face(rank: usize, n: usize, idx: &[usize]) -> Face {
        let mut vertices = FixedBitSet::with_capacity(n);
        for &i in idx {
            vertices.insert(i);
        }
        Face { rank, vertices }
    }

    fn segment() -> FaceLattice {
        FaceLattice::new(2, vec![face(1, 2, &[0, 1]), face(0, 2, &[1]), face(0, 2, &[0])])
    }

    #[test]
    fn ranks_and_covers() {
        let l = segment();
        assert_eq!(l.rank_sizes(), vec![2, 1]);
        assert_eq!(l.covers(), vec![(0, 2), (1, 2)]);
    }

    #[test]
    fn isomorphism_by_relabelling() {
        let l = segment();
        assert!(l.is_isomorphic_via(&l, &[1, 0]));
        assert!(!l.is_isomorphic_via(&l, &[0, 0]));
        let triangle = FaceLattice::new(
            3,
            vec![face(0, 3, &[0]), face(0, 3, &[1]), face(0, 3, &[2]), face(2, 3, &[0, 1, 2])],
        );
        assert!(!l.is_isomorphic_via(&triangle, &[0, 1]));
    }
}
