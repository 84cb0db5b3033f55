//! Δ-complexes presented by glued simplices, cellular (face-affine) maps,
//! and cellular chains of truncated realizations of facial spaces whose
//! levels are such complexes.
//!
//! A presentation lists top "pieces" (one closed simplex each) plus
//! order-preserving identifications between coordinate faces of pieces.
//! The derived complex has one cell per equivalence class of faces; the
//! classes are computed by a union-find closed under passing to subfaces.

use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::One;

use crate::chains::{ChainComplex, ChainMap};
use crate::error::StructureError;
use crate::facial::FacialSet;
use crate::matrix::IntMat;

#[derive(Debug, Clone)]
pub struct Piece {
    pub name: String,
    pub dim: usize,
}

/// `(a, s) ~ (b, t)`: the face of piece `a` spanned by coordinate slots `s`
/// is glued, order-preservingly, to the face of piece `b` spanned by `t`.
#[derive(Debug, Clone)]
pub struct Gluing {
    pub a: usize,
    pub s: Vec<usize>,
    pub b: usize,
    pub t: Vec<usize>,
}

#[derive(Debug, Clone, Default)]
pub struct DeltaPresentation {
    pub pieces: Vec<Piece>,
    pub gluings: Vec<Gluing>,
}

impl DeltaPresentation {
    pub fn add_piece(&mut self, name: impl Into<String>, dim: usize) -> usize {
        self.pieces.push(Piece {
            name: name.into(),
            dim,
        });
        self.pieces.len() - 1
    }

    pub fn glue(&mut self, a: usize, s: Vec<usize>, b: usize, t: Vec<usize>) {
        debug_assert_eq!(s.len(), t.len());
        self.gluings.push(Gluing { a, s, b, t });
    }

    pub fn derive(&self) -> Result<DeltaComplex, StructureError> {
        DeltaComplex::derive(self)
    }
}

/// A derived cell: an equivalence class of (piece, coordinate subset) faces.
#[derive(Debug, Clone)]
pub struct Cell {
    pub name: String,
    /// Canonical representative (piece index, sorted coordinate slots).
    pub rep: (usize, Vec<usize>),
    /// The `dim + 1` faces, as cell indices one dimension down.
    pub faces: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct DeltaComplex {
    /// cells[d]: the d-dimensional cells.
    pub cells: Vec<Vec<Cell>>,
    /// (piece, subset) -> (dim, cell index)
    class_of: BTreeMap<(usize, Vec<usize>), (usize, usize)>,
    pub piece_count: usize,
}

fn subsets_nonempty(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let s: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        out.push(s);
    }
    out
}

impl DeltaComplex {
    fn derive(pres: &DeltaPresentation) -> Result<DeltaComplex, StructureError> {
        // Enumerate virtual faces.
        let mut ids: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
        let mut keys: Vec<(usize, Vec<usize>)> = Vec::new();
        for (p, piece) in pres.pieces.iter().enumerate() {
            if piece.dim + 1 > 16 {
                return Err(StructureError::new(format!(
                    "piece `{}` has dimension {}, beyond the supported budget",
                    piece.name, piece.dim
                )));
            }
            for s in subsets_nonempty(piece.dim + 1) {
                let key = (p, s);
                ids.insert(key.clone(), keys.len());
                keys.push(key);
            }
        }
        let id_of = |p: usize, s: &[usize]| -> Result<usize, StructureError> {
            ids.get(&(p, s.to_vec())).copied().ok_or_else(|| {
                StructureError::new(format!("face {s:?} outside piece {p} bounds"))
            })
        };

        // Union-find with subface closure.
        let mut parent: Vec<usize> = (0..keys.len()).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut queue: Vec<(usize, Vec<usize>, usize, Vec<usize>)> = pres
            .gluings
            .iter()
            .map(|g| (g.a, g.s.clone(), g.b, g.t.clone()))
            .collect();
        for g in &pres.gluings {
            if g.s.len() != g.t.len() {
                return Err(StructureError::new("gluing arity mismatch"));
            }
        }
        while let Some((a, s, b, t)) = queue.pop() {
            let ia = id_of(a, &s)?;
            let ib = id_of(b, &t)?;
            let (ra, rb) = (find(&mut parent, ia), find(&mut parent, ib));
            if ra == rb {
                continue;
            }
            parent[ra.max(rb)] = ra.min(rb);
            for i in 0..s.len() {
                if s.len() > 1 {
                    let mut s2 = s.clone();
                    let mut t2 = t.clone();
                    s2.remove(i);
                    t2.remove(i);
                    queue.push((a, s2, b, t2));
                }
            }
        }

        // Classes, ordered deterministically by minimal representative.
        let mut members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..keys.len() {
            let r = find(&mut parent, i);
            members.entry(r).or_default().push(i);
        }
        let mut reps: Vec<(usize, Vec<usize>)> = members
            .values()
            .map(|m| keys[*m.iter().min().unwrap()].clone())
            .collect();
        reps.sort();
        let max_dim = pres.pieces.iter().map(|p| p.dim).max().unwrap_or(0);
        let mut cells: Vec<Vec<Cell>> = vec![Vec::new(); max_dim + 1];
        let mut class_of: BTreeMap<(usize, Vec<usize>), (usize, usize)> = BTreeMap::new();
        for rep in reps {
            let d = rep.1.len() - 1;
            let idx = cells[d].len();
            let name = if rep.1.len() == pres.pieces[rep.0].dim + 1 {
                pres.pieces[rep.0].name.clone()
            } else {
                format!(
                    "{}|{}",
                    pres.pieces[rep.0].name,
                    rep.1
                        .iter()
                        .map(|i| i.to_string())
                        .collect::<Vec<_>>()
                        .join("")
                )
            };
            cells[d].push(Cell {
                name,
                rep: rep.clone(),
                faces: Vec::new(),
            });
            class_of.insert(rep, (d, idx));
        }
        // Second pass: route every virtual face to its class.
        let mut full_class: BTreeMap<(usize, Vec<usize>), (usize, usize)> = BTreeMap::new();
        for i in 0..keys.len() {
            let r = find(&mut parent, i);
            let rep = keys[*members[&r].iter().min().unwrap()].clone();
            full_class.insert(keys[i].clone(), class_of[&rep]);
        }
        // Faces: delete the i-th coordinate of the canonical representative.
        let mut face_data: Vec<Vec<Vec<usize>>> = Vec::new();
        for d in 0..cells.len() {
            let mut per_cell = Vec::new();
            for cell in &cells[d] {
                let mut faces = Vec::new();
                if d >= 1 {
                    for i in 0..=d {
                        let mut s = cell.rep.1.clone();
                        s.remove(i);
                        let (fd, fi) = full_class[&(cell.rep.0, s)];
                        debug_assert_eq!(fd, d - 1);
                        faces.push(fi);
                    }
                }
                per_cell.push(faces);
            }
            face_data.push(per_cell);
        }
        for (d, per_cell) in face_data.into_iter().enumerate() {
            for (i, faces) in per_cell.into_iter().enumerate() {
                cells[d][i].faces = faces;
            }
        }
        Ok(DeltaComplex {
            cells,
            class_of: full_class,
            piece_count: pres.pieces.len(),
        })
    }

    /// The truncated realization of a facial set as a derived Δ-complex:
    /// one d-cell per level-d cell, the i-th face of a level-k cell glued to
    /// the whole simplex of `d_i(cell)`. Piece indices follow
    /// `facial_piece_offsets`, so cellwise maps can be described by rules.
    pub fn from_facial(f: &FacialSet, n: usize) -> Result<DeltaComplex, StructureError> {
        let top = n.min(f.top());
        let offsets = facial_piece_offsets(f, n);
        let mut pres = DeltaPresentation::default();
        for k in 0..=top {
            for c in 0..f.level(k).size() {
                pres.add_piece(f.level(k).name(c), k);
            }
        }
        for k in 1..=top {
            for c in 0..f.level(k).size() {
                let piece = offsets[k] + c;
                for i in 0..=k {
                    let target = offsets[k - 1] + f.face(k, i, c);
                    let mut s: Vec<usize> = (0..=k).collect();
                    s.remove(i);
                    pres.glue(piece, s, target, (0..k).collect());
                }
            }
        }
        let dc = pres.derive()?;
        for k in 0..=top {
            if dc.cell_count(k) != f.level(k).size() {
                return Err(StructureError::new(format!(
                    "realization cells at dimension {k} collapsed unexpectedly: {} != {}",
                    dc.cell_count(k),
                    f.level(k).size()
                )));
            }
        }
        Ok(dc)
    }

    /// A finite pointed set as a 0-dimensional complex.
    pub fn discrete(names: &[String]) -> DeltaComplex {
        let mut pres = DeltaPresentation::default();
        for n in names {
            pres.add_piece(n, 0);
        }
        pres.derive().expect("discrete complexes always derive")
    }

    pub fn max_dim(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn cell_count(&self, d: usize) -> usize {
        self.cells.get(d).map_or(0, |c| c.len())
    }

    pub fn total_cells(&self) -> usize {
        self.cells.iter().map(|c| c.len()).sum()
    }

    /// Class of a (piece, coordinate slots) virtual face.
    pub fn class(&self, piece: usize, slots: &[usize]) -> Option<(usize, usize)> {
        self.class_of.get(&(piece, slots.to_vec())).copied()
    }

    /// All virtual faces grouped per class, for exhaustive well-definedness
    /// checks of maps defined by piece-level rules.
    pub fn class_members(&self) -> BTreeMap<(usize, usize), Vec<(usize, Vec<usize>)>> {
        let mut out: BTreeMap<(usize, usize), Vec<(usize, Vec<usize>)>> = BTreeMap::new();
        for (key, cls) in &self.class_of {
            out.entry(*cls).or_default().push(key.clone());
        }
        out
    }

    pub fn chain_complex(&self) -> Result<ChainComplex, StructureError> {
        let mut generators = Vec::new();
        let mut boundaries = Vec::new();
        for d in 0..self.cells.len() {
            generators.push(self.cells[d].iter().map(|c| c.name.clone()).collect());
            let rows = if d == 0 { 0 } else { self.cells[d - 1].len() };
            let mut m = IntMat::zeros(rows, self.cells[d].len());
            if d >= 1 {
                for (j, cell) in self.cells[d].iter().enumerate() {
                    for (i, &f) in cell.faces.iter().enumerate() {
                        let sign = if i % 2 == 0 {
                            BigInt::one()
                        } else {
                            -BigInt::one()
                        };
                        m.add_to(f, j, &sign);
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
            StructureError::new(format!("derived complex has ∂∂ != 0 at degree {k}"))
        })?;
        Ok(c)
    }
}

/// Rule for one piece of the source presentation: its closed simplex maps
/// affinely into the closed simplex of `target_piece`, coordinate slot `j`
/// of the source landing on slot `coord_map[j]` of the target. Non-injective
/// slot maps describe degenerate (collapsing) images.
#[derive(Debug, Clone)]
pub struct PieceRule {
    pub target_piece: usize,
    pub coord_map: Vec<usize>,
}

/// A cellular map between derived complexes: every cell maps to a single
/// target cell with an orientation sign, or degenerates to `None`.
#[derive(Debug, Clone)]
pub struct DeltaMap {
    /// images[d][cell] = Some((target cell of the same dim, sign)) | None
    pub images: Vec<Vec<Option<(usize, i8)>>>,
}

impl DeltaMap {
    /// Build from piece-level rules and verify the rules descend to the
    /// quotient: all members of each source class must map consistently.
    pub fn from_rules(
        src: &DeltaComplex,
        dst: &DeltaComplex,
        rules: &[PieceRule],
    ) -> Result<DeltaMap, StructureError> {
        if rules.len() != src.piece_count {
            return Err(StructureError::new(format!(
                "need one rule per source piece: {} != {}",
                rules.len(),
                src.piece_count
            )));
        }
        let image_of = |piece: usize, slots: &[usize]| -> Result<Option<(usize, usize, i8)>, StructureError> {
            let rule = &rules[piece];
            let mapped: Vec<usize> = slots
                .iter()
                .map(|&j| {
                    rule.coord_map.get(j).copied().ok_or_else(|| {
                        StructureError::new(format!("rule for piece {piece} misses slot {j}"))
                    })
                })
                .collect::<Result<_, _>>()?;
            let mut sorted = mapped.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() < mapped.len() {
                return Ok(None); // degenerate
            }
            let sign = permutation_sign(&mapped);
            let (d, idx) = dst.class(rule.target_piece, &sorted).ok_or_else(|| {
                StructureError::new(format!(
                    "image face {sorted:?} missing in target piece {}",
                    rule.target_piece
                ))
            })?;
            debug_assert_eq!(d, slots.len() - 1);
            Ok(Some((d, idx, sign)))
        };
        let mut images: Vec<Vec<Option<(usize, i8)>>> = (0..src.cells.len())
            .map(|d| vec![None; src.cell_count(d)])
            .collect();
        for ((d, idx), members) in src.class_members() {
            let mut expected: Option<Option<(usize, usize, i8)>> = None;
            for (piece, slots) in &members {
                let img = image_of(*piece, slots)?;
                match &expected {
                    None => expected = Some(img),
                    Some(e) if *e == img => {}
                    Some(e) => {
                        return Err(StructureError::new(format!(
                            "map not well-defined on quotient: cell {} has images {:?} and {:?}",
                            src.cells[d][idx].name, e, img
                        )))
                    }
                }
            }
            images[d][idx] = expected.flatten().map(|(_, i, s)| (i, s));
        }
        Ok(DeltaMap { images })
    }

    pub fn identity(c: &DeltaComplex) -> DeltaMap {
        DeltaMap {
            images: (0..c.cells.len())
                .map(|d| (0..c.cell_count(d)).map(|i| Some((i, 1))).collect())
                .collect(),
        }
    }

    pub fn image(&self, d: usize, cell: usize) -> Option<(usize, i8)> {
        self.images.get(d).and_then(|v| v.get(cell)).copied().flatten()
    }

    /// Composite `self ∘ inner`.
    pub fn compose(&self, inner: &DeltaMap) -> DeltaMap {
        let images = inner
            .images
            .iter()
            .enumerate()
            .map(|(d, v)| {
                v.iter()
                    .map(|img| {
                        img.and_then(|(mid, s1)| {
                            self.image(d, mid).map(|(out, s2)| (out, s1 * s2))
                        })
                    })
                    .collect()
            })
            .collect();
        DeltaMap { images }
    }

    /// The induced chain map (degreewise signed 0/±1 matrices).
    pub fn chain_map(&self, src: &DeltaComplex, dst: &DeltaComplex) -> ChainMap {
        let top = src.cells.len().max(dst.cells.len());
        let degrees = (0..top)
            .map(|d| {
                let mut m = IntMat::zeros(dst.cell_count(d), src.cell_count(d));
                for cell in 0..src.cell_count(d) {
                    if let Some((img, sign)) = self.image(d, cell) {
                        m.set(img, cell, BigInt::from(sign));
                    }
                }
                m
            })
            .collect();
        ChainMap { degrees }
    }
}

/// Piece index of a level-`k` cell of a facial set inside the presentation
/// built by `DeltaComplex::from_facial`: `offsets[k] + cell`.
pub fn facial_piece_offsets(f: &FacialSet, n: usize) -> Vec<usize> {
    let top = n.min(f.top());
    let mut offsets = Vec::with_capacity(top + 1);
    let mut acc = 0;
    for k in 0..=top {
        offsets.push(acc);
        acc += f.level(k).size();
    }
    offsets
}

/// Sign of the permutation sorting `v` (caller guarantees distinct entries).
fn permutation_sign(v: &[usize]) -> i8 {
    let mut sign = 1i8;
    let mut v = v.to_vec();
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                v.swap(i, j);
                sign = -sign;
            }
        }
    }
    sign
}

/// Cellular chains of the truncated realization of a facial space whose
/// levels are Δ-complexes: one generator `(stage q, cell σ)` of total degree
/// `q + dim σ` per cell of each level, with
/// `∂(σ, q) = (∂σ, q) + (-1)^{dim σ} Σ_j (-1)^j (d_j σ, q-1)`.
pub struct Tower {
    pub levels: Vec<DeltaComplex>,
    /// faces[q][j]: the j-th face map from stage q to stage q-1 (q >= 1).
    pub faces: Vec<Vec<DeltaMap>>,
    pub complex: ChainComplex,
    index: BTreeMap<(usize, usize, usize), (usize, usize)>,
}

impl Tower {
    pub fn new(levels: Vec<DeltaComplex>, faces: Vec<Vec<DeltaMap>>) -> Result<Tower, StructureError> {
        if faces.len() != levels.len() - 1 {
            return Err(StructureError::new(
                "tower needs face maps for every stage above 0",
            ));
        }
        for (q, fam) in faces.iter().enumerate() {
            if fam.len() != q + 2 {
                return Err(StructureError::new(format!(
                    "stage {} needs {} face maps, got {}",
                    q + 1,
                    q + 2,
                    fam.len()
                )));
            }
        }
        let max_total = levels
            .iter()
            .enumerate()
            .map(|(q, l)| q + l.max_dim())
            .max()
            .unwrap_or(0);
        let mut index = BTreeMap::new();
        let mut generators: Vec<Vec<String>> = vec![Vec::new(); max_total + 1];
        for (q, level) in levels.iter().enumerate() {
            for d in 0..level.cells.len() {
                for (i, cell) in level.cells[d].iter().enumerate() {
                    let total = q + d;
                    index.insert((q, d, i), (total, generators[total].len()));
                    generators[total].push(format!("s{q}:{}", cell.name));
                }
            }
        }
        let mut boundaries: Vec<IntMat> = Vec::new();
        for total in 0..=max_total {
            let rows = if total == 0 {
                0
            } else {
                generators[total - 1].len()
            };
            let mut m = IntMat::zeros(rows, generators[total].len());
            if total >= 1 {
                for (q, level) in levels.iter().enumerate() {
                    if total < q {
                        continue;
                    }
                    let d = total - q;
                    for i in 0..level.cell_count(d) {
                        let col = index[&(q, d, i)].1;
                        // Internal faces of the level complex.
                        if d >= 1 {
                            for (fi, &f) in level.cells[d][i].faces.iter().enumerate() {
                                let sign = if fi % 2 == 0 {
                                    BigInt::one()
                                } else {
                                    -BigInt::one()
                                };
                                let row = index[&(q, d - 1, f)].1;
                                m.add_to(row, col, &sign);
                            }
                        }
                        // Stage-lowering faces d_j with the Koszul sign.
                        if q >= 1 {
                            let koszul = if d % 2 == 0 {
                                BigInt::one()
                            } else {
                                -BigInt::one()
                            };
                            for (j, map) in faces[q - 1].iter().enumerate() {
                                if let Some((img, s)) = map.image(d, i) {
                                    let sign = &koszul
                                        * BigInt::from(s)
                                        * if j % 2 == 0 {
                                            BigInt::one()
                                        } else {
                                            -BigInt::one()
                                        };
                                    let row = index[&(q - 1, d, img)].1;
                                    m.add_to(row, col, &sign);
                                }
                            }
                        }
                    }
                }
            }
            boundaries.push(m);
        }
        let complex = ChainComplex {
            generators,
            boundaries,
        };
        complex.validate().map_err(|k| {
            StructureError::new(format!(
                "tower boundary fails ∂∂ = 0 at degree {k}: face maps are not facial"
            ))
        })?;
        Ok(Tower {
            levels,
            faces,
            complex,
            index,
        })
    }

    pub fn generator(&self, stage: usize, dim: usize, cell: usize) -> (usize, usize) {
        self.index[&(stage, dim, cell)]
    }

    /// Chain map of a levelwise cellular map commuting with the stage faces.
    pub fn map_to(
        &self,
        dst: &Tower,
        levelwise: &[DeltaMap],
    ) -> Result<ChainMap, StructureError> {
        if levelwise.len() != self.levels.len() {
            return Err(StructureError::new("levelwise map count mismatch"));
        }
        let top = self.complex.top().max(dst.complex.top());
        let mut degrees: Vec<IntMat> = (0..=top)
            .map(|t| IntMat::zeros(dst.complex.rank(t), self.complex.rank(t)))
            .collect();
        for (q, level) in self.levels.iter().enumerate() {
            for d in 0..level.cells.len() {
                for i in 0..level.cell_count(d) {
                    let (total, col) = self.index[&(q, d, i)];
                    if let Some((img, sign)) = levelwise[q].image(d, i) {
                        let (tt, row) = dst.index[&(q, d, img)];
                        debug_assert_eq!(tt, total);
                        degrees[total].set(row, col, BigInt::from(sign));
                    }
                }
            }
        }
        let map = ChainMap { degrees };
        map.validate(&self.complex, &dst.complex)?;
        Ok(map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::HomologyGroup;

    /// Circle presented as one 1-simplex with both endpoints glued.
    #[test]
    fn glued_interval_is_circle() {
        let mut pres = DeltaPresentation::default();
        let e = pres.add_piece("e", 1);
        pres.glue(e, vec![0], e, vec![1]);
        let dc = pres.derive().unwrap();
        assert_eq!(dc.cell_count(0), 1);
        assert_eq!(dc.cell_count(1), 1);
        let h = dc.chain_complex().unwrap().homology().unwrap();
        assert_eq!(h.group(0), HomologyGroup::free(1));
        assert_eq!(h.group(1), HomologyGroup::free(1));
    }

    /// Sphere: two triangles glued along their common boundary.
    #[test]
    fn two_triangles_make_a_sphere() {
        let mut pres = DeltaPresentation::default();
        let top = pres.add_piece("t", 2);
        let bot = pres.add_piece("b", 2);
        for s in [vec![0, 1], vec![0, 2], vec![1, 2]] {
            pres.glue(top, s.clone(), bot, s);
        }
        let dc = pres.derive().unwrap();
        assert_eq!(dc.cell_count(0), 3);
        assert_eq!(dc.cell_count(1), 3);
        assert_eq!(dc.cell_count(2), 2);
        let h = dc.chain_complex().unwrap().homology().unwrap();
        assert_eq!(h.group(0), HomologyGroup::free(1));
        assert!(h.group(1).is_trivial());
        assert_eq!(h.group(2), HomologyGroup::free(1));
    }

    #[test]
    fn degenerate_rule_gives_zero_chain_map() {
        let mut src = DeltaPresentation::default();
        let e = src.add_piece("e", 1);
        let sc = src.derive().unwrap();
        let mut dst = DeltaPresentation::default();
        let v = dst.add_piece("v", 0);
        let dc = dst.derive().unwrap();
        let rule = PieceRule {
            target_piece: v,
            coord_map: vec![0, 0],
        };
        let m = DeltaMap::from_rules(&sc, &dc, std::slice::from_ref(&rule)).unwrap();
        assert!(m.image(1, e).is_none());
        assert_eq!(m.image(0, 0), Some((0, 1)));
        let cm = m.chain_map(&sc, &dc);
        cm.validate(&sc.chain_complex().unwrap(), &dc.chain_complex().unwrap())
            .unwrap();
    }

    /// A tower of discrete levels is the fat realization of a facial set.
    #[test]
    fn tower_of_discrete_levels_matches_fat_chains() {
        use crate::facial::{FacialSet, Level};
        // Circle as a facial set: one vertex, one edge with equal faces.
        let l0 = Level::new(vec!["*".into()], "*").unwrap();
        let l1 = Level::new(vec!["*".into(), "e".into()], "*").unwrap();
        let f =
            FacialSet::new(vec![l0, l1], vec![vec![vec![0, 0], vec![0, 0]]], None, None).unwrap();
        let levels = vec![
            DeltaComplex::discrete(f.level(0).names()),
            DeltaComplex::discrete(f.level(1).names()),
        ];
        let face = |i: usize| {
            DeltaMap::from_rules(
                &levels[1],
                &levels[0],
                &(0..f.level(1).size())
                    .map(|c| PieceRule {
                        target_piece: f.face(1, i, c),
                        coord_map: vec![0],
                    })
                    .collect::<Vec<_>>(),
            )
            .unwrap()
        };
        let tower = Tower::new(levels.clone(), vec![vec![face(0), face(1)]]).unwrap();
        let fat = crate::chains::fat_chains(&f, 1).unwrap();
        for k in 0..=1 {
            assert_eq!(tower.complex.rank(k), fat.rank(k));
            assert_eq!(tower.complex.boundary(k), fat.boundary(k));
        }
        let h = tower.complex.homology().unwrap();
        assert_eq!(h.group(1), HomologyGroup::free(2));

        // The derived realization complex agrees as well.
        let dc = DeltaComplex::from_facial(&f, 1).unwrap();
        let c = dc.chain_complex().unwrap();
        assert_eq!(c.boundary(1), fat.boundary(1));
    }
}
