//! Abstract simplicial complexes, joins, and the Hopf chain map from the
//! join of a discrete group with itself to the wedge-of-circles model of its
//! suspension.

use std::collections::BTreeSet;

use num::bigint::BigInt;
use num::One;

use crate::chains::{ChainComplex, ChainMap};
use crate::error::StructureError;
use crate::matrix::IntMat;
use crate::monoid::FiniteMonoid;

/// Simplices are strictly increasing vertex-index tuples, stored per
/// dimension in sorted order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    pub vertices: Vec<String>,
    pub simplices: Vec<Vec<Vec<usize>>>,
}

impl SimplicialComplex {
    pub fn discrete(names: &[String]) -> SimplicialComplex {
        SimplicialComplex {
            vertices: names.to_vec(),
            simplices: vec![(0..names.len()).map(|v| vec![v]).collect()],
        }
    }

    /// Downward closure of the given facets.
    pub fn from_facets(
        vertices: Vec<String>,
        facets: &[Vec<usize>],
    ) -> Result<SimplicialComplex, StructureError> {
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        for f in facets {
            let mut s = f.clone();
            s.sort_unstable();
            s.dedup();
            if s.len() != f.len() {
                return Err(StructureError::new(format!("repeated vertex in facet {f:?}")));
            }
            if s.iter().any(|&v| v >= vertices.len()) {
                return Err(StructureError::new(format!("facet {f:?} out of range")));
            }
            // all nonempty subsets
            let n = s.len();
            for mask in 1u32..(1 << n) {
                let sub: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| s[i]).collect();
                all.insert(sub);
            }
        }
        let max_dim = all.iter().map(|s| s.len() - 1).max().unwrap_or(0);
        let mut simplices = vec![Vec::new(); max_dim + 1];
        for s in all {
            simplices[s.len() - 1].push(s);
        }
        Ok(SimplicialComplex {
            vertices,
            simplices,
        })
    }

    pub fn dim(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn count(&self, d: usize) -> usize {
        self.simplices.get(d).map_or(0, |s| s.len())
    }

    /// The join: vertex set is the disjoint union (right copy primed) and
    /// simplices are unions of a simplex of each side, either possibly empty.
    pub fn join(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let offset = self.vertices.len();
        let mut vertices = self.vertices.clone();
        vertices.extend(other.vertices.iter().map(|v| format!("{v}'")));
        let dim = self.dim() + other.dim() + 1;
        let mut simplices: Vec<Vec<Vec<usize>>> = vec![Vec::new(); dim + 1];
        let left: Vec<Option<&Vec<usize>>> = std::iter::once(None)
            .chain(self.simplices.iter().flatten().map(Some))
            .collect();
        for l in &left {
            let lslice: &[usize] = l.map_or(&[], |v| v.as_slice());
            // right = empty
            if !lslice.is_empty() {
                simplices[lslice.len() - 1].push(lslice.to_vec());
            }
            for r in other.simplices.iter().flatten() {
                let mut s = lslice.to_vec();
                s.extend(r.iter().map(|&v| v + offset));
                simplices[s.len() - 1].push(s);
            }
        }
        for level in simplices.iter_mut() {
            level.sort();
            level.dedup();
        }
        SimplicialComplex {
            vertices,
            simplices,
        }
    }

    /// `copies`-fold iterated join with itself.
    pub fn join_power(&self, copies: usize) -> SimplicialComplex {
        assert!(copies >= 1);
        let mut out = self.clone();
        for _ in 1..copies {
            out = out.join(self);
        }
        out
    }

    pub fn chain_complex(&self) -> Result<ChainComplex, StructureError> {
        let mut generators = Vec::new();
        let mut boundaries = Vec::new();
        let index: Vec<std::collections::BTreeMap<&[usize], usize>> = self
            .simplices
            .iter()
            .map(|level| {
                level
                    .iter()
                    .enumerate()
                    .map(|(i, s)| (s.as_slice(), i))
                    .collect()
            })
            .collect();
        for d in 0..=self.dim() {
            generators.push(
                self.simplices[d]
                    .iter()
                    .map(|s| {
                        s.iter()
                            .map(|&v| self.vertices[v].as_str())
                            .collect::<Vec<_>>()
                            .join(".")
                    })
                    .collect(),
            );
            let rows = if d == 0 { 0 } else { self.count(d - 1) };
            let mut m = IntMat::zeros(rows, self.count(d));
            if d >= 1 {
                for (j, s) in self.simplices[d].iter().enumerate() {
                    for i in 0..=d {
                        let mut face = s.clone();
                        face.remove(i);
                        let row = *index[d - 1].get(face.as_slice()).ok_or_else(|| {
                            StructureError::new(format!("face {face:?} missing: not a complex"))
                        })?;
                        let sign = if i % 2 == 0 {
                            BigInt::one()
                        } else {
                            -BigInt::one()
                        };
                        m.add_to(row, j, &sign);
                    }
                }
            }
            boundaries.push(m);
        }
        let c = ChainComplex {
            generators,
            boundaries,
        };
        c.validate()
            .map_err(|k| StructureError::new(format!("simplicial ∂∂ != 0 at degree {k}")))?;
        Ok(c)
    }
}

/// The Hopf map data for a finite group `M`: the join `M * M` (a complete
/// bipartite graph), the wedge of `|M| - 1` circles modelling the suspension,
/// and the chain map sending the edge `(a, b')` to the circle `a^{-1} b`
/// oriented by the increasing suspension parameter.
pub struct HopfData {
    pub join: SimplicialComplex,
    pub join_chains: ChainComplex,
    pub wedge: ChainComplex,
    pub map: ChainMap,
}

pub fn hopf_chain_map(m: &FiniteMonoid) -> Result<HopfData, StructureError> {
    if !m.is_group() {
        return Err(StructureError::new("the Hopf map formula needs inverses"));
    }
    let disc = SimplicialComplex::discrete(&m.names);
    let join = disc.join(&disc);
    let join_chains = join.chain_complex()?;
    // Wedge of circles: a single vertex; one loop per non-identity element.
    let loop_names: Vec<String> = (0..m.size())
        .filter(|&g| g != m.identity)
        .map(|g| format!("[{}]", m.names[g]))
        .collect();
    let wedge = ChainComplex {
        generators: vec![vec!["*".into()], loop_names],
        boundaries: vec![IntMat::zeros(0, 1), IntMat::zeros(1, m.size() - 1)],
    };
    let loop_index = |g: usize| -> Option<usize> {
        if g == m.identity {
            None
        } else if g < m.identity {
            Some(g)
        } else {
            Some(g - 1)
        }
    };
    let mut deg0 = IntMat::zeros(1, join_chains.rank(0));
    for j in 0..join_chains.rank(0) {
        deg0.set(0, j, BigInt::one());
    }
    let mut deg1 = IntMat::zeros(m.size() - 1, join_chains.rank(1));
    for (j, edge) in join.simplices[1].iter().enumerate() {
        let (a, b) = (edge[0], edge[1] - m.size());
        let g = m.mul(m.inverse(a).expect("group"), b);
        if let Some(row) = loop_index(g) {
            deg1.set(row, j, BigInt::one());
        }
    }
    let map = ChainMap {
        degrees: vec![deg0, deg1],
    };
    map.validate(&join_chains, &wedge)?;
    Ok(HopfData {
        join,
        join_chains,
        wedge,
        map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::HomologyGroup;

    #[test]
    fn two_point_join_is_a_circle() {
        let s0 = SimplicialComplex::discrete(&["a".into(), "b".into()]);
        let circle = s0.join(&s0);
        assert_eq!(circle.count(0), 4);
        assert_eq!(circle.count(1), 4);
        let h = circle.chain_complex().unwrap().homology().unwrap();
        assert_eq!(h.group(1), HomologyGroup::free(1));
    }

    #[test]
    fn join_with_a_point_is_acyclic() {
        let s0 = SimplicialComplex::discrete(&["a".into(), "b".into(), "c".into()]);
        let cone = s0.join(&SimplicialComplex::discrete(&["p".into()]));
        let h = cone.chain_complex().unwrap().homology().unwrap();
        assert_eq!(h.group(0), HomologyGroup::free(1));
        for k in 1..=cone.dim() {
            assert!(h.group(k).is_trivial());
        }
    }

    #[test]
    fn three_fold_join_of_three_points() {
        let s = SimplicialComplex::discrete(&["x".into(), "y".into(), "z".into()]);
        let j = s.join_power(3);
        let h = j.chain_complex().unwrap().homology().unwrap();
        assert_eq!(h.reduced(0), HomologyGroup::free(0));
        assert!(h.group(1).is_trivial());
        assert_eq!(h.group(2), HomologyGroup::free(8));
    }

    #[test]
    fn hopf_for_z2_is_multiplication_by_two() {
        let m = FiniteMonoid::cyclic(2);
        let h = hopf_chain_map(&m).unwrap();
        // The fundamental cycle of K_{2,2}: (e,e') - (e,g') + (g,g') - (g,e').
        // Edges in order: [e,e'], [e,g'], [g,e'], [g,g'].
        assert_eq!(h.join.count(1), 4);
        let z = IntMat::from_rows(&[vec![1], vec![-1], vec![-1], vec![1]]);
        assert!(h.join_chains.boundary(1).mul(&z).is_zero());
        let img = h.map.degrees[1].mul(&z);
        // [e] dies, so the image is -2 [g] up to edge orientation bookkeeping.
        let v = img.get(0, 0).clone();
        assert_eq!(v.magnitude().to_string(), "2");
    }
}
