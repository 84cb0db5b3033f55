//! Bifacial sets: grids of finite pointed cell sets with row faces `d_i`,
//! column faces `∂_i`, row augmentations to a column of targets, and
//! optional row contractions. Row contractions are *not* required to commute
//! with the column faces; that failure is exactly what the rectification
//! calculus repairs.

use crate::error::StructureError;
use crate::facial::{Augmentation, Contraction, FacialSet, Level, ValidationReport, Violation};

#[derive(Debug, Clone)]
pub struct BifacialSet {
    /// Z_k^{-1}, the row augmentation targets, k = 0..=n.
    pub row_targets: Vec<Level>,
    /// grid[k][p] = Z_k^p.
    pub grid: Vec<Vec<Level>>,
    /// row_faces[k][p-1][i]: d_i from Z_k^p to Z_k^{p-1}, p >= 1.
    pub row_faces: Vec<Vec<Vec<Vec<usize>>>>,
    /// row_aug[k]: d_0 from Z_k^0 to Z_k^{-1}.
    pub row_aug: Vec<Vec<usize>>,
    /// col_faces[k-1][p][i]: ∂_i from Z_k^p to Z_{k-1}^p, k >= 1.
    pub col_faces: Vec<Vec<Vec<Vec<usize>>>>,
    /// col_target_faces[k-1][i]: ∂_i from Z_k^{-1} to Z_{k-1}^{-1}.
    pub col_target_faces: Vec<Vec<Vec<usize>>>,
    /// row_contractions[k][p]: s_k into Z_k^p (from Z_k^{p-1}; p = 0 from
    /// the target).
    pub row_contractions: Option<Vec<Vec<Vec<usize>>>>,
}

impl BifacialSet {
    /// Number of rows (column levels) minus one.
    pub fn n_rows(&self) -> usize {
        self.grid.len()
    }

    /// Number of columns, not counting the target column.
    pub fn n_cols(&self) -> usize {
        self.grid[0].len()
    }

    /// Row `k` as a facial resolution `Z_k^• -> Z_k^{-1}`.
    pub fn row(&self, k: usize) -> FacialSet {
        let aug = Augmentation {
            target: self.row_targets[k].clone(),
            map: self.row_aug[k].clone(),
        };
        let contraction = self
            .row_contractions
            .as_ref()
            .map(|s| Contraction { maps: s[k].clone() });
        FacialSet::new(
            self.grid[k].clone(),
            self.row_faces[k].clone(),
            Some(aug),
            contraction,
        )
        .expect("row structure validated at construction")
    }

    /// Column `p >= 0` as a facial set `Z_•^p`.
    pub fn column(&self, p: usize) -> FacialSet {
        let levels: Vec<Level> = self.grid.iter().map(|row| row[p].clone()).collect();
        let faces: Vec<Vec<Vec<usize>>> = self
            .col_faces
            .iter()
            .map(|per_row| per_row[p].clone())
            .collect();
        FacialSet::new(levels, faces, None, None).expect("column structure validated")
    }

    /// The target column `Z_•^{-1}` as a facial set.
    pub fn target_column(&self) -> FacialSet {
        FacialSet::new(
            self.row_targets.clone(),
            self.col_target_faces.clone(),
            None,
            None,
        )
        .expect("target column validated")
    }

    pub fn col_face(&self, k: usize, p: usize, i: usize, cell: usize) -> usize {
        self.col_faces[k - 1][p][i][cell]
    }

    pub fn col_target_face(&self, k: usize, i: usize, cell: usize) -> usize {
        self.col_target_faces[k - 1][i][cell]
    }

    /// `s_k` into column `p` of row `k`.
    pub fn s(&self, k: usize, p: usize, cell: usize) -> usize {
        self.row_contractions.as_ref().expect("no row contractions")[k][p][cell]
    }

    pub fn structural_check(&self) -> Result<(), StructureError> {
        let n = self.n_rows();
        if n == 0 {
            return Err(StructureError::new("empty grid"));
        }
        let p = self.n_cols();
        if self.row_targets.len() != n
            || self.row_faces.len() != n
            || self.row_aug.len() != n
            || self.col_faces.len() != n - 1
            || self.col_target_faces.len() != n - 1
        {
            return Err(StructureError::new("bifacial component count mismatch"));
        }
        for row in &self.grid {
            if row.len() != p {
                return Err(StructureError::new("ragged grid"));
            }
        }
        // Rows and columns are fully checked by the FacialSet constructor.
        for k in 0..n {
            let _ = self.try_row(k)?;
        }
        for q in 0..p {
            self.try_column(q)?;
        }
        FacialSet::new(
            self.row_targets.clone(),
            self.col_target_faces.clone(),
            None,
            None,
        )?;
        Ok(())
    }

    fn try_row(&self, k: usize) -> Result<FacialSet, StructureError> {
        let aug = Augmentation {
            target: self.row_targets[k].clone(),
            map: self.row_aug[k].clone(),
        };
        let contraction = self
            .row_contractions
            .as_ref()
            .map(|s| Contraction { maps: s[k].clone() });
        FacialSet::new(
            self.grid[k].clone(),
            self.row_faces[k].clone(),
            Some(aug),
            contraction,
        )
    }

    fn try_column(&self, p: usize) -> Result<FacialSet, StructureError> {
        let levels: Vec<Level> = self.grid.iter().map(|row| row[p].clone()).collect();
        let faces: Vec<Vec<Vec<usize>>> = self
            .col_faces
            .iter()
            .map(|per_row| per_row[p].clone())
            .collect();
        FacialSet::new(levels, faces, None, None)
    }

    /// Every defining identity: rows are facial resolutions (with their
    /// contractions when present), columns are facial, and row operations
    /// commute with column faces. Row contractions are exempt from the
    /// commutation requirement.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        for k in 0..self.n_rows() {
            let row = self.row(k);
            let mut r = row.validate_faces();
            r.merge(row.validate_augmentation());
            if self.row_contractions.is_some() {
                r.merge(row.validate_contraction());
            }
            for mut v in r.violations {
                v.law = format!("row {k}: {}", v.law);
                report.violations.push(v);
            }
        }
        for p in 0..self.n_cols() {
            let col = self.column(p);
            for mut v in col.validate_faces().violations {
                v.law = format!("column {p}: {}", v.law);
                report.violations.push(v);
            }
        }
        for mut v in self.target_column().validate_faces().violations {
            v.law = format!("target column: {}", v.law);
            report.violations.push(v);
        }
        // d_j ∂_i = ∂_i d_j and augmentation-∂ commutation.
        for k in 1..self.n_rows() {
            for p in 0..self.n_cols() {
                for i in 0..=k {
                    for cell in 0..self.grid[k][p].size() {
                        if p >= 1 {
                            for j in 0..=p {
                                let lhs =
                                    self.row_faces[k - 1][p - 1][j][self.col_face(k, p, i, cell)];
                                let rhs =
                                    self.col_face(k, p - 1, i, self.row_faces[k][p - 1][j][cell]);
                                if lhs != rhs {
                                    report.violations.push(Violation {
                                        law: "d_j ∂_i = ∂_i d_j".into(),
                                        level: k as i64,
                                        indices: vec![i as i64, j as i64, p as i64],
                                        cell: self.grid[k][p].name(cell).into(),
                                        lhs: self.grid[k - 1][p - 1].name(lhs).into(),
                                        rhs: self.grid[k - 1][p - 1].name(rhs).into(),
                                    });
                                }
                            }
                        } else {
                            let lhs = self.row_aug[k - 1][self.col_face(k, 0, i, cell)];
                            let rhs = self.col_target_face(k, i, self.row_aug[k][cell]);
                            if lhs != rhs {
                                report.violations.push(Violation {
                                    law: "aug ∂_i = ∂_i aug".into(),
                                    level: k as i64,
                                    indices: vec![i as i64],
                                    cell: self.grid[k][0].name(cell).into(),
                                    lhs: self.row_targets[k - 1].name(lhs).into(),
                                    rhs: self.row_targets[k - 1].name(rhs).into(),
                                });
                            }
                        }
                    }
                }
            }
        }
        report
    }
}
