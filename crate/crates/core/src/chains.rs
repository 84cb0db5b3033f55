//! Integer cellular chain complexes, Smith-normal-form homology, chain maps,
//! mapping cones and chain-homotopy verification.
//!
//! Nothing here is assumed: `validate` recomputes `∂∂ = 0` for every complex
//! and `ChainMap::validate` recomputes the commutation with boundaries.

use num::bigint::BigInt;
use num::One;
use serde::{Deserialize, Serialize};

use crate::error::StructureError;
use crate::facial::FacialSet;
use crate::matrix::{kernel_basis, smith_normal_form, IntMat, SmithDecomposition};

/// Free chain complex with named generators and boundary matrices.
///
/// `boundaries[k]` maps degree `k` to degree `k-1`; `boundaries[0]` has zero
/// rows. Degrees run `0..=top`.
#[derive(Clone)]
pub struct ChainComplex {
    pub generators: Vec<Vec<String>>,
    pub boundaries: Vec<IntMat>,
}

impl ChainComplex {
    pub fn top(&self) -> usize {
        self.generators.len() - 1
    }

    pub fn rank(&self, k: usize) -> usize {
        self.generators.get(k).map_or(0, |g| g.len())
    }

    /// Boundary from degree `k`, as a zero matrix outside the stored range.
    pub fn boundary(&self, k: usize) -> IntMat {
        if k == 0 {
            IntMat::zeros(0, self.rank(0))
        } else if k <= self.top() {
            self.boundaries[k].clone()
        } else {
            IntMat::zeros(self.rank(k - 1), 0)
        }
    }

    /// Exact `∂∂ = 0` check; returns the offending degree on failure.
    pub fn validate(&self) -> Result<(), usize> {
        for k in 1..self.generators.len() {
            if self.boundaries[k].rows() != self.rank(k - 1)
                || self.boundaries[k].cols() != self.rank(k)
            {
                return Err(k);
            }
            if k >= 2 && !self.boundaries[k - 1].mul(&self.boundaries[k]).is_zero() {
                return Err(k);
            }
        }
        Ok(())
    }

    /// Invariant-factor homology from Smith normal forms of consecutive
    /// boundaries. Rejects complexes with `∂∂ != 0`.
    pub fn homology(&self) -> Result<HomologyResult, StructureError> {
        self.validate().map_err(|k| {
            StructureError::new(format!("boundary of boundary nonzero at degree {k}"))
        })?;
        // Smith data of ∂_k for k = 1..=top.
        let snfs: Vec<SmithDecomposition> = (1..=self.top())
            .map(|k| smith_normal_form(&self.boundaries[k]))
            .collect();
        let groups = (0..=self.top())
            .map(|k| {
                let rank_out = if k == 0 { 0 } else { snfs[k - 1].rank };
                let (rank_in, torsion) = if k < self.top() {
                    let snf = &snfs[k];
                    let torsion: Vec<BigInt> = snf
                        .invariant_factors()
                        .into_iter()
                        .filter(|d| !d.is_one())
                        .collect();
                    (snf.rank, torsion)
                } else {
                    (0, Vec::new())
                };
                HomologyGroup {
                    betti: self.rank(k) - rank_out - rank_in,
                    torsion,
                }
            })
            .collect();
        Ok(HomologyResult { groups })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub betti: usize,
    /// Invariant factors > 1, each dividing the next.
    #[serde(with = "bigint_strings")]
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn free(betti: usize) -> Self {
        HomologyGroup {
            betti,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(order: i64) -> Self {
        HomologyGroup {
            betti: 0,
            torsion: vec![BigInt::from(order)],
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl std::fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".into()),
            b => parts.push(format!("Z^{b}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

mod bigint_strings {
    use num::bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use std::str::FromStr;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        strings.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        strings
            .into_iter()
            .map(|x| BigInt::from_str(&x).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyResult {
    pub groups: Vec<HomologyGroup>,
}

impl HomologyResult {
    pub fn group(&self, k: usize) -> HomologyGroup {
        self.groups
            .get(k)
            .cloned()
            .unwrap_or(HomologyGroup::free(0))
    }

    /// Reduced homology: one `Z` stripped from degree 0.
    pub fn reduced(&self, k: usize) -> HomologyGroup {
        let mut g = self.group(k);
        if k == 0 {
            assert!(g.betti >= 1, "degree-0 homology of a nonempty complex");
            g.betti -= 1;
        }
        g
    }
}

/// Degreewise integer matrices commuting with the boundaries.
#[derive(Clone)]
pub struct ChainMap {
    pub degrees: Vec<IntMat>,
}

impl ChainMap {
    pub fn degree(&self, k: usize, src: &ChainComplex, dst: &ChainComplex) -> IntMat {
        self.degrees
            .get(k)
            .cloned()
            .unwrap_or_else(|| IntMat::zeros(dst.rank(k), src.rank(k)))
    }

    /// Exact check of `∂ f = f ∂` in every degree plus shape agreement.
    pub fn validate(&self, src: &ChainComplex, dst: &ChainComplex) -> Result<(), StructureError> {
        let top = src.top().max(dst.top());
        for k in 0..=top {
            let f = self.degree(k, src, dst);
            if f.rows() != dst.rank(k) || f.cols() != src.rank(k) {
                return Err(StructureError::new(format!(
                    "chain map shape mismatch in degree {k}"
                )));
            }
            if k >= 1 {
                let lhs = dst.boundary(k).mul(&self.degree(k, src, dst));
                let rhs = self.degree(k - 1, src, dst).mul(&src.boundary(k));
                if lhs != rhs {
                    return Err(StructureError::new(format!(
                        "chain map does not commute with boundaries in degree {k}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn compose(
        &self,
        inner: &ChainMap,
        src: &ChainComplex,
        mid: &ChainComplex,
        dst: &ChainComplex,
    ) -> ChainMap {
        let top = src.top().max(mid.top()).max(dst.top());
        let degrees = (0..=top)
            .map(|k| self.degree(k, mid, dst).mul(&inner.degree(k, src, mid)))
            .collect();
        ChainMap { degrees }
    }

    pub fn identity(c: &ChainComplex) -> ChainMap {
        ChainMap {
            degrees: (0..=c.top()).map(|k| IntMat::identity(c.rank(k))).collect(),
        }
    }

    pub fn equals(&self, other: &ChainMap, src: &ChainComplex, dst: &ChainComplex) -> bool {
        let top = src.top().max(dst.top());
        (0..=top).all(|k| self.degree(k, src, dst) == other.degree(k, src, dst))
    }
}

/// `true` iff `f - g = ∂ h + h ∂` in every degree, exactly.
/// `h[k]` raises degree: `C_k -> D_{k+1}`.
pub fn verify_chain_homotopy(
    f: &ChainMap,
    g: &ChainMap,
    h: &[IntMat],
    src: &ChainComplex,
    dst: &ChainComplex,
) -> Result<bool, StructureError> {
    for k in 0..=src.top() {
        let hk = h
            .get(k)
            .cloned()
            .unwrap_or_else(|| IntMat::zeros(dst.rank(k + 1), src.rank(k)));
        if hk.rows() != dst.rank(k + 1) || hk.cols() != src.rank(k) {
            return Err(StructureError::new(format!(
                "homotopy shape mismatch in degree {k}"
            )));
        }
        let mut rhs = dst.boundary(k + 1).mul(&hk);
        if k >= 1 {
            let hk1 = h
                .get(k - 1)
                .cloned()
                .unwrap_or_else(|| IntMat::zeros(dst.rank(k), src.rank(k - 1)));
            rhs = rhs.add(&hk1.mul(&src.boundary(k)));
        }
        let lhs = f.degree(k, src, dst).sub(&g.degree(k, src, dst));
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Mapping cone of `f: C -> D`: degree `k` is `D_k ⊕ C_{k-1}` with the
/// shifted block boundary.
pub fn mapping_cone(f: &ChainMap, src: &ChainComplex, dst: &ChainComplex) -> ChainComplex {
    let top = src.top().max(dst.top()) + 1;
    let gen_name = |c: &ChainComplex, k: usize, i: usize| -> String {
        c.generators
            .get(k)
            .and_then(|g| g.get(i))
            .cloned()
            .unwrap_or_default()
    };
    let mut generators = Vec::new();
    let mut boundaries = Vec::new();
    for k in 0..=top {
        let mut gens: Vec<String> = (0..dst.rank(k))
            .map(|i| format!("D:{}", gen_name(dst, k, i)))
            .collect();
        if k >= 1 {
            gens.extend((0..src.rank(k - 1)).map(|i| format!("C:{}", gen_name(src, k - 1, i))));
        }
        generators.push(gens);
    }
    for k in 0..=top {
        let d_rank = dst.rank(k);
        let c_rank = if k >= 1 { src.rank(k - 1) } else { 0 };
        if k == 0 {
            boundaries.push(IntMat::zeros(0, d_rank + c_rank));
            continue;
        }
        let rows = dst.rank(k - 1) + if k >= 2 { src.rank(k - 2) } else { 0 };
        let mut m = IntMat::zeros(rows, d_rank + c_rank);
        let bd = dst.boundary(k);
        for i in 0..bd.rows() {
            for j in 0..bd.cols() {
                m.set(i, j, bd.get(i, j).clone());
            }
        }
        let fm = f.degree(k - 1, src, dst);
        for i in 0..fm.rows() {
            for j in 0..fm.cols() {
                m.set(i, d_rank + j, -fm.get(i, j).clone());
            }
        }
        if k >= 2 {
            let bc = src.boundary(k - 1);
            for i in 0..bc.rows() {
                for j in 0..bc.cols() {
                    m.set(dst.rank(k - 1) + i, d_rank + j, -bc.get(i, j).clone());
                }
            }
        }
        boundaries.push(m);
    }
    ChainComplex {
        generators,
        boundaries,
    }
}

/// Unreduced cellular chains of the truncated free realization of a facial
/// set: one degree-`k` generator per level-`k` cell, `∂x = Σ (-1)^i d_i x`.
pub fn fat_chains(f: &FacialSet, n: usize) -> Result<ChainComplex, StructureError> {
    let top = n.min(f.top());
    let mut generators = Vec::new();
    let mut boundaries = Vec::new();
    for k in 0..=top {
        generators.push(f.level(k).names().to_vec());
        let rows = if k == 0 { 0 } else { f.level(k - 1).size() };
        let mut m = IntMat::zeros(rows, f.level(k).size());
        if k >= 1 {
            for cell in 0..f.level(k).size() {
                for i in 0..=k {
                    let sign = if i % 2 == 0 {
                        BigInt::one()
                    } else {
                        -BigInt::one()
                    };
                    m.add_to(f.face(k, i, cell), cell, &sign);
                }
            }
        }
        boundaries.push(m);
    }
    let c = ChainComplex {
        generators,
        boundaries,
    };
    c.validate().map_err(|k| {
        StructureError::new(format!(
            "facial identities violated: boundary of boundary nonzero at degree {k}"
        ))
    })?;
    Ok(c)
}

/// Pointed cellular chains: the quotient of `fat_chains` by the subcomplex
/// spanned by basepoint cells, together with the collapse chain map.
pub fn pointed_chains(
    f: &FacialSet,
    n: usize,
) -> Result<(ChainComplex, ChainMap), StructureError> {
    let fat = fat_chains(f, n)?;
    let top = n.min(f.top());
    // Non-basepoint cells keep their identity; basepoint cells die.
    let keep: Vec<Vec<Option<usize>>> = (0..=top)
        .map(|k| {
            let mut next = 0;
            (0..f.level(k).size())
                .map(|c| {
                    if c == f.level(k).basepoint() {
                        None
                    } else {
                        let v = next;
                        next += 1;
                        Some(v)
                    }
                })
                .collect()
        })
        .collect();
    let mut generators = Vec::new();
    let mut boundaries = Vec::new();
    let mut collapse = Vec::new();
    for k in 0..=top {
        let gens: Vec<String> = (0..f.level(k).size())
            .filter(|&c| keep[k][c].is_some())
            .map(|c| f.level(k).name(c).to_string())
            .collect();
        let rows = if k == 0 {
            0
        } else {
            keep[k - 1].iter().flatten().count()
        };
        let mut m = IntMat::zeros(rows, gens.len());
        if k >= 1 {
            for cell in 0..f.level(k).size() {
                let Some(col) = keep[k][cell] else { continue };
                for i in 0..=k {
                    if let Some(row) = keep[k - 1][f.face(k, i, cell)] {
                        let sign = if i % 2 == 0 {
                            BigInt::one()
                        } else {
                            -BigInt::one()
                        };
                        m.add_to(row, col, &sign);
                    }
                }
            }
        }
        let mut cm = IntMat::zeros(gens.len(), f.level(k).size());
        for cell in 0..f.level(k).size() {
            if let Some(row) = keep[k][cell] {
                cm.set(row, cell, BigInt::one());
            }
        }
        generators.push(gens);
        boundaries.push(m);
        collapse.push(cm);
    }
    let pointed = ChainComplex {
        generators,
        boundaries,
    };
    pointed
        .validate()
        .map_err(|k| StructureError::new(format!("pointed boundary fails at degree {k}")))?;
    let map = ChainMap { degrees: collapse };
    map.validate(&fat, &pointed)?;
    Ok((pointed, map))
}

/// Homology of one degree presented as a cokernel: integer cycle basis,
/// relation matrix from the incoming boundary, and the change of basis needed
/// to write any cycle in the basis coordinates.
pub struct DegreePresentation {
    /// Columns form an integer basis of the cycles `Z_k`.
    pub cycles: IntMat,
    /// Relations `R`: image of `∂_{k+1}` in cycle coordinates; `H = coker R`.
    pub relations: IntMat,
    rows_for_coords: IntMat,
}

impl DegreePresentation {
    pub fn new(c: &ChainComplex, k: usize) -> DegreePresentation {
        let snf = smith_normal_form(&c.boundary(k));
        let cycles = kernel_basis(&snf);
        let sel: Vec<usize> = (snf.rank..snf.v.cols()).collect();
        let rows_for_coords = snf.v_inv.select_rows(&sel);
        let relations = rows_for_coords.mul(&c.boundary(k + 1));
        DegreePresentation {
            cycles,
            relations,
            rows_for_coords,
        }
    }

    /// Coordinates of cycle columns in the cycle basis.
    pub fn coordinates(&self, m: &IntMat) -> IntMat {
        self.rows_for_coords.mul(m)
    }

    pub fn generators(&self) -> usize {
        self.cycles.cols()
    }

    /// Invariants `(betti, torsion)` of `coker(relations)`.
    pub fn invariants(&self) -> HomologyGroup {
        let snf = smith_normal_form(&self.relations);
        HomologyGroup {
            betti: self.generators() - snf.rank,
            torsion: snf
                .invariant_factors()
                .into_iter()
                .filter(|d| !d.is_one())
                .collect(),
        }
    }
}

/// The map induced by a chain map on degree-`k` homology, written in
/// cycle-basis coordinates of a cokernel presentation on each side.
pub struct InducedMap {
    pub matrix: IntMat,
    pub src: HomologyGroup,
    pub dst: HomologyGroup,
    pub dst_relations: IntMat,
}

pub fn induced_map(f: &ChainMap, src: &ChainComplex, dst: &ChainComplex, k: usize) -> InducedMap {
    let ps = DegreePresentation::new(src, k);
    let pd = DegreePresentation::new(dst, k);
    let image = f.degree(k, src, dst).mul(&ps.cycles);
    debug_assert!(dst.boundary(k).mul(&image).is_zero());
    InducedMap {
        matrix: pd.coordinates(&image),
        src: ps.invariants(),
        dst: pd.invariants(),
        dst_relations: pd.relations,
    }
}

impl InducedMap {
    /// Surjectivity onto `coker(dst_relations)`: the stacked matrix `[M | R]`
    /// has trivial cokernel.
    pub fn is_surjective(&self) -> bool {
        let stacked = self.matrix.hcat(&self.dst_relations);
        let snf = smith_normal_form(&stacked);
        snf.rank == stacked.rows() && snf.invariant_factors().iter().all(|d| d.is_one())
    }

    /// A surjection between abstractly isomorphic finitely generated abelian
    /// groups is an isomorphism.
    pub fn is_isomorphism(&self) -> bool {
        self.src == self.dst && self.is_surjective()
    }
}

/// Isomorphism check of the induced map in all degrees `0..=top_degree`.
pub fn is_homology_isomorphism(
    f: &ChainMap,
    src: &ChainComplex,
    dst: &ChainComplex,
    top_degree: usize,
) -> bool {
    (0..=top_degree).all(|k| induced_map(f, src, dst, k).is_isomorphism())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle() -> ChainComplex {
        // one vertex, one loop
        ChainComplex {
            generators: vec![vec!["v".into()], vec!["e".into()]],
            boundaries: vec![IntMat::zeros(0, 1), IntMat::zeros(1, 1)],
        }
    }

    #[test]
    fn circle_homology() {
        let h = circle().homology().unwrap();
        assert_eq!(h.group(0), HomologyGroup::free(1));
        assert_eq!(h.group(1), HomologyGroup::free(1));
    }

    #[test]
    fn torsion_from_snf() {
        // (Z <- Z) with ∂_1 = [2]: H_0 = Z/2, H_1 = 0.
        let c = ChainComplex {
            generators: vec![vec!["v".into()], vec!["e".into()]],
            boundaries: vec![IntMat::zeros(0, 1), IntMat::from_rows(&[vec![2]])],
        };
        let h = c.homology().unwrap();
        assert_eq!(h.group(0), HomologyGroup::cyclic(2));
        assert!(h.group(1).is_trivial());
    }

    #[test]
    fn dd_nonzero_rejected() {
        let c = ChainComplex {
            generators: vec![vec!["a".into()], vec!["b".into()], vec!["c".into()]],
            boundaries: vec![
                IntMat::zeros(0, 1),
                IntMat::from_rows(&[vec![1]]),
                IntMat::from_rows(&[vec![1]]),
            ],
        };
        assert!(c.homology().is_err());
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let c = circle();
        let cone = mapping_cone(&ChainMap::identity(&c), &c, &c);
        cone.validate().unwrap();
        let h = cone.homology().unwrap();
        for k in 0..=cone.top() {
            assert!(h.group(k).is_trivial(), "H_{k} = {}", h.group(k));
        }
    }

    #[test]
    fn cone_of_zero_is_shifted_sum() {
        let c = circle();
        let zero = ChainMap {
            degrees: vec![IntMat::zeros(1, 1), IntMat::zeros(1, 1)],
        };
        let cone = mapping_cone(&zero, &c, &c);
        cone.validate().unwrap();
        let h = cone.homology().unwrap();
        // H(cone) = H(D) ⊕ H(C)[1] = (Z, Z+Z, Z)
        assert_eq!(h.group(0), HomologyGroup::free(1));
        assert_eq!(h.group(1), HomologyGroup::free(2));
        assert_eq!(h.group(2), HomologyGroup::free(1));
    }

    #[test]
    fn trivial_homotopy() {
        // Interval: v0, v1, edge with ∂e = v1 - v0.
        let c = ChainComplex {
            generators: vec![vec!["v0".into(), "v1".into()], vec!["e".into()]],
            boundaries: vec![IntMat::zeros(0, 2), IntMat::from_rows(&[vec![-1], vec![1]])],
        };
        let id = ChainMap::identity(&c);
        assert!(verify_chain_homotopy(&id, &id, &[], &c, &c).unwrap());
        // A perturbed h between equal maps must fail.
        let h = vec![IntMat::from_rows(&[vec![1, 0]])];
        assert!(!verify_chain_homotopy(&id, &id, &h, &c, &c).unwrap());
    }

    #[test]
    fn induced_identity_is_iso() {
        let c = circle();
        let id = ChainMap::identity(&c);
        assert!(is_homology_isomorphism(&id, &c, &c, 1));
        let double = ChainMap {
            degrees: vec![IntMat::identity(1), IntMat::from_rows(&[vec![2]])],
        };
        let ind = induced_map(&double, &c, &c, 1);
        assert!(!ind.is_isomorphism());
    }
}
