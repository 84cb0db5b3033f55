//! Facial (semi-simplicial) sets: finite pointed cell levels, face tables,
//! optional augmentation and contraction, and exhaustive identity validation.
//!
//! A facial set here is a finite truncation: levels `0..=N`, each a pointed
//! finite set, with total face tables `d_i: X_k -> X_{k-1}`. An augmentation
//! adds a pointed target playing the role of level `-1`; a contraction adds
//! sections `s: X_{k-1} -> X_k` subject to `d_0 s = id`, `d_i s = s d_{i-1}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::StructureError;

/// A finite pointed set with named elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Level {
    names: Vec<String>,
    basepoint: usize,
    index: BTreeMap<String, usize>,
}

impl Level {
    pub fn new(names: Vec<String>, basepoint: &str) -> Result<Level, StructureError> {
        let mut index = BTreeMap::new();
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(StructureError::new(format!("duplicate cell name `{n}`")));
            }
        }
        let bp = *index
            .get(basepoint)
            .ok_or_else(|| StructureError::new(format!("basepoint `{basepoint}` not a cell")))?;
        Ok(Level {
            names,
            basepoint: bp,
            index,
        })
    }

    /// The one-point level `{*}`.
    pub fn point() -> Level {
        Level::new(vec!["*".into()], "*").unwrap()
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// i-fold cartesian power; elements named by component tuples.
    pub fn power(&self, i: usize) -> Level {
        assert!(i >= 1);
        let mut names = Vec::with_capacity(self.size().pow(i as u32));
        for o in 0..self.size().pow(i as u32) {
            let t = tuple_of_ordinal(o, self.size(), i);
            names.push(tuple_name(&t.iter().map(|&c| self.name(c)).collect::<Vec<_>>()));
        }
        let bp = tuple_name(&vec![self.name(self.basepoint); i]);
        Level::new(names, &bp).unwrap()
    }
}

pub fn tuple_name(parts: &[&str]) -> String {
    format!("({})", parts.join(","))
}

/// Mixed-radix decoding: ordinal -> tuple of `len` digits base `base`.
pub fn tuple_of_ordinal(mut o: usize, base: usize, len: usize) -> Vec<usize> {
    let mut t = vec![0; len];
    for slot in (0..len).rev() {
        t[slot] = o % base;
        o /= base;
    }
    t
}

pub fn ordinal_of_tuple(t: &[usize], base: usize) -> usize {
    t.iter().fold(0, |acc, &d| acc * base + d)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Augmentation {
    pub target: Level,
    /// level 0 -> target, by ordinal
    pub map: Vec<usize>,
}

/// Contraction data: `maps[k]` sends level `k-1` (the augmentation target for
/// `k = 0`) into level `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contraction {
    pub maps: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacialSet {
    levels: Vec<Level>,
    /// faces[k-1][i][cell]: the face `d_i` from level `k` to level `k-1`.
    faces: Vec<Vec<Vec<usize>>>,
    augmentation: Option<Augmentation>,
    contraction: Option<Contraction>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ValidateMode {
    Faces,
    Contraction,
    Augmentation,
}

/// One failed identity, with both evaluated sides as a concrete witness.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Violation {
    pub law: String,
    pub level: i64,
    pub indices: Vec<i64>,
    pub cell: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }
}

impl FacialSet {
    pub fn new(
        levels: Vec<Level>,
        faces: Vec<Vec<Vec<usize>>>,
        augmentation: Option<Augmentation>,
        contraction: Option<Contraction>,
    ) -> Result<FacialSet, StructureError> {
        if levels.is_empty() {
            return Err(StructureError::new("a facial set needs at least level 0"));
        }
        if faces.len() != levels.len() - 1 {
            return Err(StructureError::new(format!(
                "expected {} face families, got {}",
                levels.len() - 1,
                faces.len()
            )));
        }
        for k in 1..levels.len() {
            let fam = &faces[k - 1];
            if fam.len() != k + 1 {
                return Err(StructureError::new(format!(
                    "level {k} needs {} face operators, got {}",
                    k + 1,
                    fam.len()
                )));
            }
            for (i, table) in fam.iter().enumerate() {
                if table.len() != levels[k].size() {
                    return Err(StructureError::new(format!(
                        "face table d_{i} at level {k} is not total"
                    )));
                }
                if let Some(&bad) = table.iter().find(|&&c| c >= levels[k - 1].size()) {
                    return Err(StructureError::new(format!(
                        "face table d_{i} at level {k} maps outside level {}: {bad}",
                        k - 1
                    )));
                }
            }
        }
        if let Some(aug) = &augmentation {
            if aug.map.len() != levels[0].size() {
                return Err(StructureError::new("augmentation map is not total"));
            }
            if aug.map.iter().any(|&c| c >= aug.target.size()) {
                return Err(StructureError::new("augmentation map out of range"));
            }
        }
        if let Some(con) = &contraction {
            let aug = augmentation
                .as_ref()
                .ok_or_else(|| StructureError::new("contraction requires an augmentation"))?;
            if con.maps.len() != levels.len() {
                return Err(StructureError::new(format!(
                    "contraction needs {} maps, got {}",
                    levels.len(),
                    con.maps.len()
                )));
            }
            for (k, map) in con.maps.iter().enumerate() {
                let src = if k == 0 {
                    aug.target.size()
                } else {
                    levels[k - 1].size()
                };
                if map.len() != src {
                    return Err(StructureError::new(format!(
                        "contraction map into level {k} is not total"
                    )));
                }
                if map.iter().any(|&c| c >= levels[k].size()) {
                    return Err(StructureError::new(format!(
                        "contraction map into level {k} out of range"
                    )));
                }
            }
        }
        Ok(FacialSet {
            levels,
            faces,
            augmentation,
            contraction,
        })
    }

    pub fn n_levels(&self) -> usize {
        self.levels.len()
    }

    /// Largest level index.
    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, k: usize) -> &Level {
        &self.levels[k]
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    /// `d_i` from level `k` (k >= 1).
    pub fn face(&self, k: usize, i: usize, cell: usize) -> usize {
        self.faces[k - 1][i][cell]
    }

    pub fn face_table(&self, k: usize, i: usize) -> &[usize] {
        &self.faces[k - 1][i]
    }

    pub fn augmentation(&self) -> Option<&Augmentation> {
        self.augmentation.as_ref()
    }

    pub fn contraction(&self) -> Option<&Contraction> {
        self.contraction.as_ref()
    }

    pub fn has_augmentation(&self) -> bool {
        self.augmentation.is_some()
    }

    pub fn has_contraction(&self) -> bool {
        self.contraction.is_some()
    }

    pub fn augment_cell(&self, cell: usize) -> usize {
        self.augmentation.as_ref().expect("no augmentation").map[cell]
    }

    /// `s` into level `k` (from level `k-1`, or from the augmentation target
    /// when `k = 0`).
    pub fn s(&self, k: usize, cell: usize) -> usize {
        self.contraction.as_ref().expect("no contraction").maps[k][cell]
    }

    /// `(d_0)^(k+1)` from level `k` down into the augmentation target.
    pub fn d0_to_target(&self, k: usize, cell: usize) -> usize {
        let mut c = cell;
        for level in (1..=k).rev() {
            c = self.face(level, 0, c);
        }
        self.augment_cell(c)
    }

    /// Face-identity and basepoint checks (`mode = faces`), exhaustive.
    pub fn validate_faces(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        for k in 1..self.n_levels() {
            for i in 0..=k {
                let bp = self.level(k).basepoint();
                let img = self.face(k, i, bp);
                if img != self.level(k - 1).basepoint() {
                    report.violations.push(Violation {
                        law: "basepoint preserved by face".into(),
                        level: k as i64,
                        indices: vec![i as i64],
                        cell: self.level(k).name(bp).into(),
                        lhs: self.level(k - 1).name(img).into(),
                        rhs: self.level(k - 1).name(self.level(k - 1).basepoint()).into(),
                    });
                }
            }
        }
        for k in 2..self.n_levels() {
            for j in 1..=k {
                for i in 0..j {
                    for cell in 0..self.level(k).size() {
                        let lhs = self.face(k - 1, i, self.face(k, j, cell));
                        let rhs = self.face(k - 1, j - 1, self.face(k, i, cell));
                        if lhs != rhs {
                            report.violations.push(Violation {
                                law: "d_i d_j = d_{j-1} d_i".into(),
                                level: k as i64,
                                indices: vec![i as i64, j as i64],
                                cell: self.level(k).name(cell).into(),
                                lhs: self.level(k - 2).name(lhs).into(),
                                rhs: self.level(k - 2).name(rhs).into(),
                            });
                        }
                    }
                }
            }
        }
        report
    }

    /// Augmentation compatibility `d_0 d_0 = d_0 d_1` plus basepoints.
    pub fn validate_augmentation(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let Some(aug) = &self.augmentation else {
            report.violations.push(Violation {
                law: "augmentation present".into(),
                level: -1,
                indices: vec![],
                cell: String::new(),
                lhs: "missing".into(),
                rhs: "required".into(),
            });
            return report;
        };
        let bp0 = self.level(0).basepoint();
        if aug.map[bp0] != aug.target.basepoint() {
            report.violations.push(Violation {
                law: "basepoint preserved by augmentation".into(),
                level: 0,
                indices: vec![],
                cell: self.level(0).name(bp0).into(),
                lhs: aug.target.name(aug.map[bp0]).into(),
                rhs: aug.target.name(aug.target.basepoint()).into(),
            });
        }
        if self.n_levels() >= 2 {
            for cell in 0..self.level(1).size() {
                let lhs = aug.map[self.face(1, 0, cell)];
                let rhs = aug.map[self.face(1, 1, cell)];
                if lhs != rhs {
                    report.violations.push(Violation {
                        law: "d_0 d_0 = d_0 d_1".into(),
                        level: 1,
                        indices: vec![0, 1],
                        cell: self.level(1).name(cell).into(),
                        lhs: aug.target.name(lhs).into(),
                        rhs: aug.target.name(rhs).into(),
                    });
                }
            }
        }
        report
    }

    /// Contraction identities `d_0 s = id`, `d_i s = s d_{i-1}` at every level.
    pub fn validate_contraction(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let Some(con) = &self.contraction else {
            report.violations.push(Violation {
                law: "contraction present".into(),
                level: -1,
                indices: vec![],
                cell: String::new(),
                lhs: "missing".into(),
                rhs: "required".into(),
            });
            return report;
        };
        let aug = self.augmentation.as_ref().expect("checked at construction");
        // s into level 0: d_0 (the augmentation) inverts it; basepoint.
        let tbp = aug.target.basepoint();
        if con.maps[0][tbp] != self.level(0).basepoint() {
            report.violations.push(Violation {
                law: "basepoint preserved by contraction".into(),
                level: 0,
                indices: vec![],
                cell: aug.target.name(tbp).into(),
                lhs: self.level(0).name(con.maps[0][tbp]).into(),
                rhs: self.level(0).name(self.level(0).basepoint()).into(),
            });
        }
        for x in 0..aug.target.size() {
            let lhs = aug.map[con.maps[0][x]];
            if lhs != x {
                report.violations.push(Violation {
                    law: "d_0 s = id".into(),
                    level: 0,
                    indices: vec![0],
                    cell: aug.target.name(x).into(),
                    lhs: aug.target.name(lhs).into(),
                    rhs: aug.target.name(x).into(),
                });
            }
        }
        for k in 1..self.n_levels() {
            let bp = self.level(k - 1).basepoint();
            if con.maps[k][bp] != self.level(k).basepoint() {
                report.violations.push(Violation {
                    law: "basepoint preserved by contraction".into(),
                    level: k as i64,
                    indices: vec![],
                    cell: self.level(k - 1).name(bp).into(),
                    lhs: self.level(k).name(con.maps[k][bp]).into(),
                    rhs: self.level(k).name(self.level(k).basepoint()).into(),
                });
            }
            for x in 0..self.level(k - 1).size() {
                let lhs = self.face(k, 0, con.maps[k][x]);
                if lhs != x {
                    report.violations.push(Violation {
                        law: "d_0 s = id".into(),
                        level: k as i64,
                        indices: vec![0],
                        cell: self.level(k - 1).name(x).into(),
                        lhs: self.level(k - 1).name(lhs).into(),
                        rhs: self.level(k - 1).name(x).into(),
                    });
                }
                for i in 1..=k {
                    let lhs = self.face(k, i, con.maps[k][x]);
                    // d_{i-1} on level k-1; for k = 1 that is the augmentation.
                    let rhs = if k == 1 {
                        con.maps[0][aug.map[x]]
                    } else {
                        con.maps[k - 1][self.face(k - 1, i - 1, x)]
                    };
                    if lhs != rhs {
                        report.violations.push(Violation {
                            law: "d_i s = s d_{i-1}".into(),
                            level: k as i64,
                            indices: vec![i as i64],
                            cell: self.level(k - 1).name(x).into(),
                            lhs: self.level(k - 1).name(lhs).into(),
                            rhs: self.level(k - 1).name(rhs).into(),
                        });
                    }
                }
            }
        }
        report
    }

    pub fn validate(&self, mode: ValidateMode) -> ValidationReport {
        match mode {
            ValidateMode::Faces => self.validate_faces(),
            ValidateMode::Contraction => self.validate_contraction(),
            ValidateMode::Augmentation => self.validate_augmentation(),
        }
    }

    /// Every mode that the attached data supports.
    pub fn validate_all(&self) -> ValidationReport {
        let mut report = self.validate_faces();
        if self.has_augmentation() {
            report.merge(self.validate_augmentation());
        }
        if self.has_contraction() {
            report.merge(self.validate_contraction());
        }
        report
    }

    /// Collapse levels above `n` to the basepoint. Augmentation survives;
    /// contraction survives only when nothing is actually collapsed, since
    /// `d_0 s = id` fails on a collapsed level.
    pub fn truncate(&self, n: usize) -> FacialSet {
        if n >= self.top() {
            return self.clone();
        }
        let mut levels = Vec::with_capacity(self.n_levels());
        let mut faces = Vec::new();
        for k in 0..self.n_levels() {
            if k <= n {
                levels.push(self.level(k).clone());
            } else {
                levels.push(Level::point());
            }
        }
        for k in 1..self.n_levels() {
            let fam: Vec<Vec<usize>> = (0..=k)
                .map(|i| {
                    if k <= n {
                        self.faces[k - 1][i].clone()
                    } else if k == n + 1 {
                        vec![self.level(k - 1).basepoint(); 1]
                    } else {
                        vec![0; 1]
                    }
                })
                .collect();
            faces.push(fam);
        }
        FacialSet::new(levels, faces, self.augmentation.clone(), None)
            .expect("truncation preserves structure")
    }

    /// Levelwise i-fold cartesian power with coordinatewise faces,
    /// augmentation, and contraction.
    pub fn levelwise_power(&self, i: usize) -> Result<FacialSet, StructureError> {
        if i == 0 {
            return Err(StructureError::new("levelwise power needs i >= 1"));
        }
        let levels: Vec<Level> = self.levels.iter().map(|l| l.power(i)).collect();
        let mut faces = Vec::new();
        for k in 1..self.n_levels() {
            let src = self.level(k).size();
            let fam: Vec<Vec<usize>> = (0..=k)
                .map(|fi| {
                    (0..src.pow(i as u32))
                        .map(|o| {
                            let t = tuple_of_ordinal(o, src, i);
                            let img: Vec<usize> =
                                t.iter().map(|&c| self.face(k, fi, c)).collect();
                            ordinal_of_tuple(&img, self.level(k - 1).size())
                        })
                        .collect()
                })
                .collect();
            faces.push(fam);
        }
        let augmentation = self.augmentation.as_ref().map(|aug| {
            let target = aug.target.power(i);
            let map = (0..self.level(0).size().pow(i as u32))
                .map(|o| {
                    let t = tuple_of_ordinal(o, self.level(0).size(), i);
                    let img: Vec<usize> = t.iter().map(|&c| aug.map[c]).collect();
                    ordinal_of_tuple(&img, aug.target.size())
                })
                .collect();
            Augmentation { target, map }
        });
        let contraction = self.contraction.as_ref().map(|con| {
            let maps = (0..self.n_levels())
                .map(|k| {
                    let src = if k == 0 {
                        self.augmentation.as_ref().unwrap().target.size()
                    } else {
                        self.level(k - 1).size()
                    };
                    (0..src.pow(i as u32))
                        .map(|o| {
                            let t = tuple_of_ordinal(o, src, i);
                            let img: Vec<usize> = t.iter().map(|&c| con.maps[k][c]).collect();
                            ordinal_of_tuple(&img, self.level(k).size())
                        })
                        .collect()
                })
                .collect();
            Contraction { maps }
        });
        FacialSet::new(levels, faces, augmentation, contraction)
    }
}

/// A morphism of facial sets given by per-level functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacialMap {
    pub levels: Vec<Vec<usize>>,
}

impl FacialMap {
    pub fn structural_check(
        &self,
        src: &FacialSet,
        dst: &FacialSet,
    ) -> Result<(), StructureError> {
        if self.levels.len() != src.n_levels() || src.n_levels() != dst.n_levels() {
            return Err(StructureError::new("facial map level count mismatch"));
        }
        for (k, map) in self.levels.iter().enumerate() {
            if map.len() != src.level(k).size() {
                return Err(StructureError::new(format!(
                    "facial map not total at level {k}"
                )));
            }
            if map.iter().any(|&c| c >= dst.level(k).size()) {
                return Err(StructureError::new(format!(
                    "facial map out of range at level {k}"
                )));
            }
        }
        Ok(())
    }

    /// `f d_i = d_i f` plus basepoint preservation, exhaustively.
    pub fn validate(&self, src: &FacialSet, dst: &FacialSet) -> ValidationReport {
        let mut report = ValidationReport::default();
        for k in 0..src.n_levels() {
            let bp = src.level(k).basepoint();
            if self.levels[k][bp] != dst.level(k).basepoint() {
                report.violations.push(Violation {
                    law: "basepoint preserved by map".into(),
                    level: k as i64,
                    indices: vec![],
                    cell: src.level(k).name(bp).into(),
                    lhs: dst.level(k).name(self.levels[k][bp]).into(),
                    rhs: dst.level(k).name(dst.level(k).basepoint()).into(),
                });
            }
        }
        for k in 1..src.n_levels() {
            for i in 0..=k {
                for cell in 0..src.level(k).size() {
                    let lhs = self.levels[k - 1][src.face(k, i, cell)];
                    let rhs = dst.face(k, i, self.levels[k][cell]);
                    if lhs != rhs {
                        report.violations.push(Violation {
                            law: "f d_i = d_i f".into(),
                            level: k as i64,
                            indices: vec![i as i64],
                            cell: src.level(k).name(cell).into(),
                            lhs: dst.level(k - 1).name(lhs).into(),
                            rhs: dst.level(k - 1).name(rhs).into(),
                        });
                    }
                }
            }
        }
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Two-level set violating `d_0 d_1 = d_0 d_0` through the augmentation.
    fn broken_augmented() -> FacialSet {
        let l0 = Level::new(vec!["*".into(), "x".into(), "y".into()], "*").unwrap();
        let l1 = Level::new(vec!["*".into(), "a".into()], "*").unwrap();
        let target = Level::new(vec!["p".into(), "q".into()], "p").unwrap();
        // d_0(a) = x, d_1(a) = y, aug(x) = p, aug(y) = q.
        let faces = vec![vec![vec![0, 1], vec![0, 2]]];
        let aug = Augmentation {
            target,
            map: vec![0, 0, 1],
        };
        FacialSet::new(vec![l0, l1], faces, Some(aug), None).unwrap()
    }

    #[test]
    fn augmentation_violation_is_located() {
        let f = broken_augmented();
        assert!(f.validate_faces().is_valid());
        let report = f.validate_augmentation();
        assert_eq!(report.violations.len(), 1);
        let v = &report.violations[0];
        assert_eq!(v.level, 1);
        assert_eq!(v.indices, vec![0, 1]);
        assert_eq!(v.cell, "a");
    }

    #[test]
    fn missing_face_entry_is_structural() {
        let l0 = Level::new(vec!["*".into()], "*").unwrap();
        let l1 = Level::new(vec!["*".into(), "a".into()], "*").unwrap();
        let err = FacialSet::new(vec![l0, l1], vec![vec![vec![0], vec![0, 0]]], None, None);
        assert!(err.is_err());
    }

    #[test]
    fn truncate_is_idempotent_and_collapses() {
        let f = broken_augmented();
        let t = f.truncate(0);
        assert_eq!(t.level(1).size(), 1);
        assert!(t.validate_faces().is_valid());
        assert!(t.validate_augmentation().is_valid());
        let t2 = t.truncate(0);
        assert_eq!(t, t2);
        assert_eq!(f.truncate(1), f);
    }

    #[test]
    fn power_multiplies_level_sizes() {
        let f = broken_augmented();
        let p = f.levelwise_power(2).unwrap();
        assert_eq!(p.level(0).size(), 9);
        assert_eq!(p.level(1).size(), 4);
        assert!(p.validate_faces().is_valid());
        assert_eq!(f.levelwise_power(1).unwrap().level(0).size(), 3);
        assert!(f.levelwise_power(0).is_err());
    }
}
