//! Discrete bar and Milnor classifying-space constructions: the facial sets
//! `G_•(M)` and `P_•(M)` of a finite monoid, and the stages `E_n -> B_n` of
//! the universal bundle of a finite group, with their cellular chains.

use num::bigint::BigInt;
use num::One;

use crate::chains::{ChainComplex, ChainMap};
use crate::error::StructureError;
use crate::facial::{
    ordinal_of_tuple, tuple_name, tuple_of_ordinal, Augmentation, Contraction, FacialSet, Level,
};
use crate::matrix::IntMat;
use crate::monoid::FiniteMonoid;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BarVariant {
    /// `G_n = M^n`, faces drop-first / multiply-adjacent / drop-last.
    G,
    /// `P_n = M^{n+1}`, faces multiply-adjacent / drop-last, with the
    /// prepend-identity contraction and augmentation to the point.
    P,
}

fn tuple_level(m: &FiniteMonoid, len: usize) -> Level {
    let mut names = Vec::with_capacity(m.size().pow(len as u32));
    for o in 0..m.size().pow(len as u32) {
        let t = tuple_of_ordinal(o, m.size(), len);
        names.push(tuple_name(
            &t.iter().map(|&c| m.names[c].as_str()).collect::<Vec<_>>(),
        ));
    }
    let bp = tuple_name(&vec![m.names[m.identity].as_str(); len]);
    Level::new(names, &bp).unwrap()
}

/// The bar facial set of a finite monoid, truncated at level `n`.
pub fn bar_facial(
    m: &FiniteMonoid,
    variant: BarVariant,
    n: usize,
) -> Result<FacialSet, StructureError> {
    let report = m.validate();
    if !report.is_valid() {
        return Err(StructureError::new(format!(
            "invalid monoid: {}",
            report.violations[0].law
        )));
    }
    let width = |k: usize| match variant {
        BarVariant::G => k,
        BarVariant::P => k + 1,
    };
    let levels: Vec<Level> = (0..=n).map(|k| tuple_level(m, width(k))).collect();
    let mut faces = Vec::new();
    for k in 1..=n {
        let w = width(k);
        let fam: Vec<Vec<usize>> = (0..=k)
            .map(|i| {
                (0..m.size().pow(w as u32))
                    .map(|o| {
                        let t = tuple_of_ordinal(o, m.size(), w);
                        let img: Vec<usize> = match variant {
                            BarVariant::G => {
                                if i == 0 {
                                    t[1..].to_vec()
                                } else if i == k {
                                    t[..k - 1].to_vec()
                                } else {
                                    // multiply slots i-1 and i (0-indexed) of (α_1..α_k)
                                    let mut v = Vec::with_capacity(k - 1);
                                    v.extend_from_slice(&t[..i - 1]);
                                    v.push(m.mul(t[i - 1], t[i]));
                                    v.extend_from_slice(&t[i + 1..]);
                                    v
                                }
                            }
                            BarVariant::P => {
                                if i == k {
                                    t[..k].to_vec()
                                } else {
                                    let mut v = Vec::with_capacity(k);
                                    v.extend_from_slice(&t[..i]);
                                    v.push(m.mul(t[i], t[i + 1]));
                                    v.extend_from_slice(&t[i + 2..]);
                                    v
                                }
                            }
                        };
                        ordinal_of_tuple(&img, m.size())
                    })
                    .collect()
            })
            .collect();
        faces.push(fam);
    }
    let (augmentation, contraction) = match variant {
        BarVariant::G => (None, None),
        BarVariant::P => {
            let aug = Augmentation {
                target: Level::point(),
                map: vec![0; m.size()],
            };
            // s prepends the identity: (α_0..α_{k-1}) -> (e, α_0..α_{k-1}).
            let maps: Vec<Vec<usize>> = (0..=n)
                .map(|k| {
                    if k == 0 {
                        vec![m.identity]
                    } else {
                        (0..m.size().pow(k as u32))
                            .map(|o| {
                                let mut t = vec![m.identity];
                                t.extend(tuple_of_ordinal(o, m.size(), k));
                                ordinal_of_tuple(&t, m.size())
                            })
                            .collect()
                    }
                })
                .collect();
            (Some(aug), Some(Contraction { maps }))
        }
    };
    FacialSet::new(levels, faces, augmentation, contraction)
}

/// A CW complex presented by named cells and integer boundary matrices,
/// optionally carrying a cell-permuting group action.
#[derive(Debug, Clone)]
pub struct CwComplex {
    pub cells: Vec<Vec<String>>,
    pub boundaries: Vec<IntMat>,
    /// action[g][dim][cell]
    pub action: Option<Vec<Vec<Vec<usize>>>>,
}

impl CwComplex {
    pub fn chain_complex(&self) -> ChainComplex {
        ChainComplex {
            generators: self.cells.clone(),
            boundaries: self.boundaries.clone(),
        }
    }

    pub fn total_cells(&self) -> usize {
        self.cells.iter().map(|c| c.len()).sum()
    }

    /// `∂∂ = 0`, plus: the action is dimension-preserving, boundary-
    /// preserving and free away from the identity.
    pub fn validate(&self, m: Option<&FiniteMonoid>) -> Result<(), StructureError> {
        self.chain_complex()
            .validate()
            .map_err(|k| StructureError::new(format!("∂∂ != 0 at dimension {k}")))?;
        if let (Some(action), Some(group)) = (&self.action, m) {
            for (g, per_dim) in action.iter().enumerate() {
                for (d, perm) in per_dim.iter().enumerate() {
                    if perm.len() != self.cells[d].len() {
                        return Err(StructureError::new("action is not dimension-preserving"));
                    }
                    if g != group.identity && perm.iter().enumerate().any(|(c, &img)| img == c) {
                        return Err(StructureError::new(format!(
                            "action of {} has a fixed cell",
                            group.names[g]
                        )));
                    }
                }
                // Permutation matrices commute with the boundaries.
                for d in 1..self.cells.len() {
                    let p_low = perm_matrix(&per_dim[d - 1]);
                    let p_high = perm_matrix(&per_dim[d]);
                    if p_low.mul(&self.boundaries[d]) != self.boundaries[d].mul(&p_high) {
                        return Err(StructureError::new(format!(
                            "action of {} does not preserve boundaries in dimension {d}",
                            group.names[g]
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

fn perm_matrix(perm: &[usize]) -> IntMat {
    let mut m = IntMat::zeros(perm.len(), perm.len());
    for (c, &img) in perm.iter().enumerate() {
        m.set(img, c, BigInt::one());
    }
    m
}

#[derive(Debug)]
pub struct MilnorStage {
    pub e: CwComplex,
    pub b: CwComplex,
}

/// Iterated Milnor stages: `E_0 = M` discrete and
/// `E_{k+1} = E_k ∪_θ (M × C E_k)` with the free non-reduced cone,
/// `B_k = E_k / M`.
pub fn milnor_stage(
    m: &FiniteMonoid,
    n: usize,
    budget: usize,
) -> Result<MilnorStage, StructureError> {
    if !m.is_group() {
        return Err(StructureError::new(
            "the Milnor construction needs a group: the orbit complex requires a free action",
        ));
    }
    // Projected size: |E_{k+1}| = (1 + |M|)|E_k| + |M|.
    let mut projected = m.size();
    for _ in 0..n {
        projected = (1 + m.size()) * projected + m.size();
    }
    if projected > budget {
        return Err(StructureError::new(format!(
            "cell budget exceeded: stage {n} of {} needs {projected} cells (> {budget})",
            m.size()
        )));
    }

    let mut cells: Vec<Vec<String>> = vec![m.names.clone()];
    let mut boundaries: Vec<IntMat> = vec![IntMat::zeros(0, m.size())];
    let mut action: Vec<Vec<Vec<usize>>> = (0..m.size())
        .map(|g| vec![(0..m.size()).map(|c| m.mul(g, c)).collect()])
        .collect();

    for stage in 1..=n {
        let old_counts: Vec<usize> = cells.iter().map(|c| c.len()).collect();
        let old_dims = cells.len();
        let mut new_cells = cells.clone();
        let mut new_action: Vec<Vec<Vec<usize>>> = action.clone();
        // Apexes of the |M| cones.
        for g in 0..m.size() {
            new_cells[0].push(format!("a{stage}({})", m.names[g]));
        }
        for (g, acts) in new_action.iter_mut().enumerate() {
            for h in 0..m.size() {
                acts[0].push(old_counts[0] + m.mul(g, h));
            }
        }
        // Cone cells over every old cell, one per group element.
        for d in 0..old_dims {
            let target_dim = d + 1;
            if new_cells.len() <= target_dim {
                new_cells.push(Vec::new());
                for acts in new_action.iter_mut() {
                    acts.push(Vec::new());
                }
            }
            let base = old_counts.get(target_dim).copied().unwrap_or(0);
            for g in 0..m.size() {
                for c in 0..old_counts[d] {
                    new_cells[target_dim].push(format!(
                        "c{stage}({};{})",
                        m.names[g], cells[d][c]
                    ));
                }
            }
            for (h, acts) in new_action.iter_mut().enumerate() {
                for g in 0..m.size() {
                    for c in 0..old_counts[d] {
                        acts[target_dim].push(base + m.mul(h, g) * old_counts[d] + c);
                    }
                }
            }
        }
        // Boundaries.
        let mut new_boundaries: Vec<IntMat> = Vec::new();
        for d in 0..new_cells.len() {
            let rows = if d == 0 { 0 } else { new_cells[d - 1].len() };
            let mut mtx = IntMat::zeros(rows, new_cells[d].len());
            // Old boundaries embed.
            if d >= 1 && d < boundaries.len() {
                let old = &boundaries[d];
                for i in 0..old.rows() {
                    for j in 0..old.cols() {
                        mtx.set(i, j, old.get(i, j).clone());
                    }
                }
            }
            if d >= 1 {
                let src_dim = d - 1;
                if src_dim < old_dims {
                    let base_col = old_counts.get(d).copied().unwrap_or(0);
                    for g in 0..m.size() {
                        for c in 0..old_counts[src_dim] {
                            let col = base_col + g * old_counts[src_dim] + c;
                            // ∂(cone c) = θ(g, c) - cone(∂c); for vertices the
                            // second term is the apex.
                            if src_dim == 0 {
                                let gc = action[g][0][c];
                                mtx.add_to(gc, col, &BigInt::one());
                                let apex = old_counts[0] + g;
                                mtx.add_to(apex, col, &(-BigInt::one()));
                            } else {
                                let gc = action[g][src_dim][c];
                                mtx.add_to(gc, col, &BigInt::one());
                                let old_b = &boundaries[src_dim];
                                let cone_base = old_counts.get(src_dim).copied().unwrap_or(0);
                                for r in 0..old_b.rows() {
                                    let coeff = old_b.get(r, c);
                                    if !num::Zero::is_zero(coeff) {
                                        let cone_r = cone_base + g * old_counts[src_dim - 1] + r;
                                        mtx.add_to(cone_r, col, &(-coeff.clone()));
                                    }
                                }
                            }
                        }
                    }
                }
            }
            new_boundaries.push(mtx);
        }
        cells = new_cells;
        boundaries = new_boundaries;
        action = new_action;
    }

    let e = CwComplex {
        cells,
        boundaries,
        action: Some(action),
    };
    e.validate(Some(m))?;

    // Orbit complex: cells are orbits; boundaries are induced on
    // representatives and verified to be independent of the choice.
    let action = e.action.as_ref().unwrap();
    let mut orbit_of: Vec<Vec<usize>> = Vec::new();
    let mut orbit_cells: Vec<Vec<String>> = Vec::new();
    for d in 0..e.cells.len() {
        let count = e.cells[d].len();
        let mut orbit = vec![usize::MAX; count];
        let mut names = Vec::new();
        for c in 0..count {
            if orbit[c] != usize::MAX {
                continue;
            }
            let idx = names.len();
            for g in 0..m.size() {
                orbit[action[g][d][c]] = idx;
            }
            names.push(format!("[{}]", e.cells[d][c]));
        }
        orbit_of.push(orbit);
        orbit_cells.push(names);
    }
    let mut orbit_boundaries = Vec::new();
    for d in 0..e.cells.len() {
        let rows = if d == 0 { 0 } else { orbit_cells[d - 1].len() };
        let mut mtx = IntMat::zeros(rows, orbit_cells[d].len());
        if d >= 1 {
            let mut seen = vec![false; orbit_cells[d].len()];
            for c in 0..e.cells[d].len() {
                let o = orbit_of[d][c];
                if seen[o] {
                    continue;
                }
                seen[o] = true;
                for r in 0..e.boundaries[d].rows() {
                    let coeff = e.boundaries[d].get(r, c);
                    if !num::Zero::is_zero(coeff) {
                        mtx.add_to(orbit_of[d - 1][r], o, coeff);
                    }
                }
            }
        }
        orbit_boundaries.push(mtx);
    }
    let b = CwComplex {
        cells: orbit_cells,
        boundaries: orbit_boundaries,
        action: None,
    };
    b.validate(None)?;
    // The projection is a chain map: the induced boundary is well-defined.
    let projection = ChainMap {
        degrees: (0..e.cells.len())
            .map(|d| {
                let mut p = IntMat::zeros(b.cells[d].len(), e.cells[d].len());
                for c in 0..e.cells[d].len() {
                    p.set(orbit_of[d][c], c, BigInt::one());
                }
                p
            })
            .collect(),
    };
    projection
        .validate(&e.chain_complex(), &b.chain_complex())
        .map_err(|err| {
            StructureError::new(format!("orbit boundary is not well-defined: {err}"))
        })?;
    Ok(MilnorStage { e, b })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::{fat_chains, HomologyGroup};

    #[test]
    fn bar_of_z2_multiplies() {
        let m = FiniteMonoid::cyclic(2);
        let g = bar_facial(&m, BarVariant::G, 3).unwrap();
        assert!(g.validate_faces().is_valid());
        // d_1(g,g) = (e) at level 2.
        let lvl2 = g.level(2);
        let gg = lvl2.index_of("(g1,g1)").unwrap();
        let img = g.face(2, 1, gg);
        assert_eq!(g.level(1).name(img), "(e)");
        // levels: 1, 2, 4, 8
        assert_eq!(
            (0..=3).map(|k| g.level(k).size()).collect::<Vec<_>>(),
            vec![1, 2, 4, 8]
        );
    }

    #[test]
    fn p_variant_is_contracted() {
        for name in ["trivial", "z2", "z3", "idem2", "s3"] {
            let m = FiniteMonoid::named(name).unwrap();
            let p = bar_facial(&m, BarVariant::P, 2).unwrap();
            assert!(p.validate_all().is_valid(), "{name}");
        }
    }

    #[test]
    fn trivial_group_stage_one_is_a_circle() {
        let m = FiniteMonoid::trivial();
        let g = bar_facial(&m, BarVariant::G, 1).unwrap();
        let h = fat_chains(&g, 1).unwrap().homology().unwrap();
        assert_eq!(h.group(0), HomologyGroup::free(1));
        assert_eq!(h.group(1), HomologyGroup::free(1));
    }

    #[test]
    fn milnor_of_z2_is_projective_space() {
        let m = FiniteMonoid::cyclic(2);
        let s1 = milnor_stage(&m, 1, 10_000).unwrap();
        let h1 = s1.b.chain_complex().homology().unwrap();
        assert_eq!(h1.group(0), HomologyGroup::free(1));
        assert_eq!(h1.group(1), HomologyGroup::free(1));
        let s2 = milnor_stage(&m, 2, 10_000).unwrap();
        // Octahedron upstairs.
        assert_eq!(
            s2.e.cells.iter().map(|c| c.len()).collect::<Vec<_>>(),
            vec![6, 12, 8]
        );
        let h2 = s2.b.chain_complex().homology().unwrap();
        assert_eq!(h2.group(0), HomologyGroup::free(1));
        assert_eq!(h2.group(1), HomologyGroup::cyclic(2));
        assert!(h2.group(2).is_trivial());
        // Orbit sizes.
        for d in 0..s2.e.cells.len() {
            assert_eq!(s2.e.cells[d].len(), 2 * s2.b.cells[d].len());
        }
    }

    #[test]
    fn milnor_rejects_monoids_and_budgets() {
        let idem = FiniteMonoid::idempotent2();
        assert!(milnor_stage(&idem, 1, 10_000).is_err());
        let z2 = FiniteMonoid::cyclic(2);
        let err = milnor_stage(&z2, 3, 10).unwrap_err();
        assert!(err.to_string().contains("budget"));
    }

    #[test]
    fn trivial_group_stages_are_acyclic() {
        let m = FiniteMonoid::trivial();
        for n in 0..=3 {
            let s = milnor_stage(&m, n, 10_000).unwrap();
            let h = s.b.chain_complex().homology().unwrap();
            assert_eq!(h.group(0), HomologyGroup::free(1));
            for k in 1..s.b.cells.len() {
                assert!(h.group(k).is_trivial(), "B_{n} of * has H_{k} = {}", h.group(k));
            }
        }
    }
}
