//! JSON schemas for the file formats: facial sets, bifacial sets, monoid
//! tables, and loops. Tables are explicit name-to-name maps so every
//! identity stays mechanically checkable; rationals travel as `p/q` strings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bifacial::BifacialSet;
use crate::error::StructureError;
use crate::facial::{Augmentation, Contraction, FacialSet, Level};
use crate::monoid::FiniteMonoid;
use crate::moore::MooreLoop;
use crate::ratio::{format_rational, parse_rational};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LevelDoc {
    pub cells: Vec<String>,
    pub basepoint: String,
}

impl LevelDoc {
    pub fn to_level(&self) -> Result<Level, StructureError> {
        Level::new(self.cells.clone(), &self.basepoint)
    }

    pub fn of_level(l: &Level) -> LevelDoc {
        LevelDoc {
            cells: l.names().to_vec(),
            basepoint: l.name(l.basepoint()).to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AugmentationDoc {
    pub target: LevelDoc,
    pub map: BTreeMap<String, String>,
}

/// `faces` keys are `"k,i"`; `contraction` keys are the target level `k`
/// (`"0"` maps the augmentation target into level 0).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FacialDoc {
    pub levels: Vec<LevelDoc>,
    #[serde(default)]
    pub faces: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub augmentation: Option<AugmentationDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contraction: Option<BTreeMap<String, BTreeMap<String, String>>>,
}

fn table_to_map(
    table: &BTreeMap<String, String>,
    src: &Level,
    dst: &Level,
    what: &str,
) -> Result<Vec<usize>, StructureError> {
    let mut out = Vec::with_capacity(src.size());
    for cell in src.names() {
        let img = table.get(cell).ok_or_else(|| {
            StructureError::new(format!("{what}: missing entry for cell `{cell}`"))
        })?;
        let idx = dst
            .index_of(img)
            .ok_or_else(|| StructureError::new(format!("{what}: unknown image cell `{img}`")))?;
        out.push(idx);
    }
    Ok(out)
}

fn map_to_table(map: &[usize], src: &Level, dst: &Level) -> BTreeMap<String, String> {
    map.iter()
        .enumerate()
        .map(|(c, &img)| (src.name(c).to_string(), dst.name(img).to_string()))
        .collect()
}

impl FacialDoc {
    pub fn to_facial(&self) -> Result<FacialSet, StructureError> {
        let levels: Vec<Level> = self
            .levels
            .iter()
            .map(|l| l.to_level())
            .collect::<Result<_, _>>()?;
        if levels.is_empty() {
            return Err(StructureError::new("no levels"));
        }
        let mut faces = Vec::new();
        for k in 1..levels.len() {
            let mut fam = Vec::new();
            for i in 0..=k {
                let key = format!("{k},{i}");
                let table = self.faces.get(&key).ok_or_else(|| {
                    StructureError::new(format!("missing face table `{key}`"))
                })?;
                fam.push(table_to_map(
                    table,
                    &levels[k],
                    &levels[k - 1],
                    &format!("face {key}"),
                )?);
            }
            faces.push(fam);
        }
        let augmentation = match &self.augmentation {
            None => None,
            Some(doc) => {
                let target = doc.target.to_level()?;
                let map = table_to_map(&doc.map, &levels[0], &target, "augmentation")?;
                Some(Augmentation { target, map })
            }
        };
        let contraction = match &self.contraction {
            None => None,
            Some(tables) => {
                let aug = augmentation
                    .as_ref()
                    .ok_or_else(|| StructureError::new("contraction requires augmentation"))?;
                let mut maps = Vec::new();
                for k in 0..levels.len() {
                    let key = k.to_string();
                    let table = tables.get(&key).ok_or_else(|| {
                        StructureError::new(format!("missing contraction table `{key}`"))
                    })?;
                    let src = if k == 0 { &aug.target } else { &levels[k - 1] };
                    maps.push(table_to_map(
                        table,
                        src,
                        &levels[k],
                        &format!("contraction {key}"),
                    )?);
                }
                Some(Contraction { maps })
            }
        };
        FacialSet::new(levels, faces, augmentation, contraction)
    }

    pub fn of_facial(f: &FacialSet) -> FacialDoc {
        let mut faces = BTreeMap::new();
        for k in 1..f.n_levels() {
            for i in 0..=k {
                faces.insert(
                    format!("{k},{i}"),
                    map_to_table(f.face_table(k, i), f.level(k), f.level(k - 1)),
                );
            }
        }
        let augmentation = f.augmentation().map(|aug| AugmentationDoc {
            target: LevelDoc::of_level(&aug.target),
            map: map_to_table(&aug.map, f.level(0), &aug.target),
        });
        let contraction = f.contraction().map(|con| {
            let aug = f.augmentation().expect("contraction implies augmentation");
            con.maps
                .iter()
                .enumerate()
                .map(|(k, map)| {
                    let src = if k == 0 { &aug.target } else { f.level(k - 1) };
                    (k.to_string(), map_to_table(map, src, f.level(k)))
                })
                .collect()
        });
        FacialDoc {
            levels: f.levels().iter().map(LevelDoc::of_level).collect(),
            faces,
            augmentation,
            contraction,
        }
    }
}

/// Bifacial schema: `grid[k][p]`, `row_targets[k]`, row faces keyed
/// `"k:p,i"` (with `p = 0, i = 0` the augmentation kept separately under
/// `row_augmentation["k"]`), column faces keyed `"k,i:p"` with `p = -1`
/// allowed, and row contractions keyed `"k:p"`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BifacialDoc {
    pub row_targets: Vec<LevelDoc>,
    pub grid: Vec<Vec<LevelDoc>>,
    #[serde(default)]
    pub row_faces: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default)]
    pub row_augmentation: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default)]
    pub col_faces: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub row_contractions: Option<BTreeMap<String, BTreeMap<String, String>>>,
}

impl BifacialDoc {
    pub fn to_bifacial(&self) -> Result<BifacialSet, StructureError> {
        let row_targets: Vec<Level> = self
            .row_targets
            .iter()
            .map(|l| l.to_level())
            .collect::<Result<_, _>>()?;
        let grid: Vec<Vec<Level>> = self
            .grid
            .iter()
            .map(|row| row.iter().map(|l| l.to_level()).collect())
            .collect::<Result<_, _>>()?;
        let n_rows = grid.len();
        if n_rows == 0 || row_targets.len() != n_rows {
            return Err(StructureError::new("grid and row_targets disagree"));
        }
        let n_cols = grid[0].len();
        let lookup = |map: &BTreeMap<String, BTreeMap<String, String>>,
                      key: String,
                      src: &Level,
                      dst: &Level|
         -> Result<Vec<usize>, StructureError> {
            let table = map
                .get(&key)
                .ok_or_else(|| StructureError::new(format!("missing table `{key}`")))?;
            table_to_map(table, src, dst, &key)
        };
        let mut row_faces = Vec::new();
        for (k, row) in grid.iter().enumerate() {
            let mut per_p = Vec::new();
            for p in 1..n_cols {
                let mut fam = Vec::new();
                for i in 0..=p {
                    fam.push(lookup(
                        &self.row_faces,
                        format!("{k}:{p},{i}"),
                        &row[p],
                        &row[p - 1],
                    )?);
                }
                per_p.push(fam);
            }
            row_faces.push(per_p);
        }
        let mut row_aug = Vec::new();
        for (k, row) in grid.iter().enumerate() {
            row_aug.push(lookup(
                &self.row_augmentation,
                format!("{k}"),
                &row[0],
                &row_targets[k],
            )?);
        }
        let mut col_faces = Vec::new();
        let mut col_target_faces = Vec::new();
        for k in 1..n_rows {
            let mut per_p = Vec::new();
            for (p, level) in grid[k].iter().enumerate() {
                let mut fam = Vec::new();
                for i in 0..=k {
                    fam.push(lookup(
                        &self.col_faces,
                        format!("{k},{i}:{p}"),
                        level,
                        &grid[k - 1][p],
                    )?);
                }
                per_p.push(fam);
            }
            col_faces.push(per_p);
            let mut fam = Vec::new();
            for i in 0..=k {
                fam.push(lookup(
                    &self.col_faces,
                    format!("{k},{i}:-1"),
                    &row_targets[k],
                    &row_targets[k - 1],
                )?);
            }
            col_target_faces.push(fam);
        }
        let row_contractions = match &self.row_contractions {
            None => None,
            Some(tables) => {
                let mut per_row = Vec::new();
                for (k, row) in grid.iter().enumerate() {
                    let mut maps = Vec::new();
                    for p in 0..n_cols {
                        let src = if p == 0 { &row_targets[k] } else { &row[p - 1] };
                        let table = tables.get(&format!("{k}:{p}")).ok_or_else(|| {
                            StructureError::new(format!("missing contraction table `{k}:{p}`"))
                        })?;
                        maps.push(table_to_map(
                            table,
                            src,
                            &row[p],
                            &format!("row contraction {k}:{p}"),
                        )?);
                    }
                    per_row.push(maps);
                }
                Some(per_row)
            }
        };
        let z = BifacialSet {
            row_targets,
            grid,
            row_faces,
            row_aug,
            col_faces,
            col_target_faces,
            row_contractions,
        };
        z.structural_check()?;
        Ok(z)
    }

    pub fn of_bifacial(z: &BifacialSet) -> BifacialDoc {
        let mut row_faces = BTreeMap::new();
        let mut row_augmentation = BTreeMap::new();
        let mut col_faces = BTreeMap::new();
        for k in 0..z.n_rows() {
            for p in 1..z.n_cols() {
                for i in 0..=p {
                    row_faces.insert(
                        format!("{k}:{p},{i}"),
                        map_to_table(&z.row_faces[k][p - 1][i], &z.grid[k][p], &z.grid[k][p - 1]),
                    );
                }
            }
            row_augmentation.insert(
                format!("{k}"),
                map_to_table(&z.row_aug[k], &z.grid[k][0], &z.row_targets[k]),
            );
        }
        for k in 1..z.n_rows() {
            for p in 0..z.n_cols() {
                for i in 0..=k {
                    col_faces.insert(
                        format!("{k},{i}:{p}"),
                        map_to_table(&z.col_faces[k - 1][p][i], &z.grid[k][p], &z.grid[k - 1][p]),
                    );
                }
            }
            for i in 0..=k {
                col_faces.insert(
                    format!("{k},{i}:-1"),
                    map_to_table(
                        &z.col_target_faces[k - 1][i],
                        &z.row_targets[k],
                        &z.row_targets[k - 1],
                    ),
                );
            }
        }
        let row_contractions = z.row_contractions.as_ref().map(|rc| {
            let mut out = BTreeMap::new();
            for (k, maps) in rc.iter().enumerate() {
                for (p, map) in maps.iter().enumerate() {
                    let src = if p == 0 {
                        &z.row_targets[k]
                    } else {
                        &z.grid[k][p - 1]
                    };
                    out.insert(format!("{k}:{p}"), map_to_table(map, src, &z.grid[k][p]));
                }
            }
            out
        });
        BifacialDoc {
            row_targets: z.row_targets.iter().map(LevelDoc::of_level).collect(),
            grid: z
                .grid
                .iter()
                .map(|row| row.iter().map(LevelDoc::of_level).collect())
                .collect(),
            row_faces,
            row_augmentation,
            col_faces,
            row_contractions,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MonoidDoc {
    pub elements: Vec<String>,
    pub identity: String,
    pub table: Vec<Vec<String>>,
}

impl MonoidDoc {
    pub fn to_monoid(&self) -> Result<FiniteMonoid, StructureError> {
        let index = |name: &str| -> Result<usize, StructureError> {
            self.elements
                .iter()
                .position(|e| e == name)
                .ok_or_else(|| StructureError::new(format!("unknown element `{name}`")))
        };
        let identity = index(&self.identity)?;
        if self.table.len() != self.elements.len() {
            return Err(StructureError::new("multiplication table is not square"));
        }
        let table = self
            .table
            .iter()
            .map(|row| {
                if row.len() != self.elements.len() {
                    return Err(StructureError::new("multiplication table is not square"));
                }
                row.iter().map(|e| index(e)).collect()
            })
            .collect::<Result<_, _>>()?;
        FiniteMonoid::new(self.elements.clone(), identity, table)
    }

    pub fn of_monoid(m: &FiniteMonoid) -> MonoidDoc {
        MonoidDoc {
            elements: m.names.clone(),
            identity: m.names[m.identity].clone(),
            table: m
                .table
                .iter()
                .map(|row| row.iter().map(|&v| m.names[v].clone()).collect())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LoopDoc {
    pub dim: usize,
    /// `[["0", ["0", "0"]], ["1/2", ["1", "0"]], ...]`
    pub breakpoints: Vec<(String, Vec<String>)>,
}

impl LoopDoc {
    pub fn to_loop(&self) -> Result<MooreLoop, StructureError> {
        let breakpoints = self
            .breakpoints
            .iter()
            .map(|(t, p)| {
                Ok((
                    parse_rational(t)?,
                    p.iter().map(|x| parse_rational(x)).collect::<Result<Vec<_>, _>>()?,
                ))
            })
            .collect::<Result<Vec<_>, StructureError>>()?;
        MooreLoop::new(self.dim, breakpoints)
    }

    pub fn of_loop(l: &MooreLoop) -> LoopDoc {
        LoopDoc {
            dim: l.dim(),
            breakpoints: l
                .breakpoints()
                .iter()
                .map(|(t, p)| {
                    (
                        format_rational(t),
                        p.iter().map(format_rational).collect(),
                    )
                })
                .collect(),
        }
    }
}

pub fn parse_facial(json: &str) -> Result<FacialSet, StructureError> {
    let doc: FacialDoc =
        serde_json::from_str(json).map_err(|e| StructureError::new(format!("bad JSON: {e}")))?;
    doc.to_facial()
}

pub fn parse_bifacial(json: &str) -> Result<BifacialSet, StructureError> {
    let doc: BifacialDoc =
        serde_json::from_str(json).map_err(|e| StructureError::new(format!("bad JSON: {e}")))?;
    doc.to_bifacial()
}

pub fn parse_monoid(json: &str) -> Result<FiniteMonoid, StructureError> {
    let doc: MonoidDoc =
        serde_json::from_str(json).map_err(|e| StructureError::new(format!("bad JSON: {e}")))?;
    doc.to_monoid()
}

pub fn parse_loop(json: &str) -> Result<MooreLoop, StructureError> {
    let doc: LoopDoc =
        serde_json::from_str(json).map_err(|e| StructureError::new(format!("bad JSON: {e}")))?;
    doc.to_loop()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bar::{bar_facial, BarVariant};
    use crate::gen;

    #[test]
    fn facial_roundtrip() {
        let m = FiniteMonoid::cyclic(2);
        let f = bar_facial(&m, BarVariant::P, 2).unwrap();
        let doc = FacialDoc::of_facial(&f);
        let json = serde_json::to_string_pretty(&doc).unwrap();
        let back = parse_facial(&json).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn bifacial_roundtrip() {
        let mut rng = gen::rng_from_seed(31);
        let z = gen::rand_bifacial(&mut rng, 2, 2, 3, 2, 1);
        let doc = BifacialDoc::of_bifacial(&z);
        let json = serde_json::to_string(&doc).unwrap();
        let back = parse_bifacial(&json).unwrap();
        assert!(back.validate().is_valid());
        assert_eq!(back.grid, z.grid);
        assert_eq!(back.row_faces, z.row_faces);
        assert_eq!(back.col_faces, z.col_faces);
    }

    #[test]
    fn monoid_and_loop_roundtrip() {
        let m = FiniteMonoid::symmetric3();
        let doc = MonoidDoc::of_monoid(&m);
        let back = doc.to_monoid().unwrap();
        assert_eq!(back, m);

        let mut rng = gen::rng_from_seed(33);
        let l = gen::rand_loop(&mut rng, 2, 8);
        let doc = LoopDoc::of_loop(&l);
        let back = doc.to_loop().unwrap();
        assert_eq!(back, l);
    }

    #[test]
    fn missing_face_table_is_structural() {
        let json = r#"{"levels":[{"cells":["*"],"basepoint":"*"},{"cells":["*","a"],"basepoint":"*"}],"faces":{"1,0":{"*":"*","a":"*"}}}"#;
        let err = parse_facial(json).unwrap_err();
        assert!(err.to_string().contains("1,1"));
    }
}
