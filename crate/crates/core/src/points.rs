//! Exact point arithmetic in truncated realizations of contracted facial
//! sets: canonical forms for the quotient model, the stage inclusion, the
//! augmentation, the section, the contraction homotopy, and the collapse to
//! the pointed realization.
//!
//! A point of the stage-`n` free realization is `(x, t_0..t_n)` with `x` a
//! level-`n` cell and exact rational barycentric coordinates. Whenever some
//! `t_k = 0` the quotient relation rewrites the representative to
//! `(s d_k x, 0, t_0, ..., ^t_k, ..., t_n)`. The rewrite policy picks the
//! smallest such `k` whose move actually changes the representative;
//! confluence is not assumed but checked by the exhaustive enumerator below.

use std::collections::BTreeSet;

use num::rational::BigRational;
use num::{One, Zero};

use crate::error::PointError;
use crate::facial::FacialSet;
use crate::ratio::format_rational;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RealPoint {
    pub level: usize,
    pub cell: usize,
    pub coords: Vec<BigRational>,
}

impl RealPoint {
    pub fn new(
        level: usize,
        cell: usize,
        coords: Vec<BigRational>,
    ) -> Result<RealPoint, PointError> {
        if coords.len() != level + 1 {
            return Err(PointError::BadCoordinates(format!(
                "stage {level} needs {} coordinates, got {}",
                level + 1,
                coords.len()
            )));
        }
        if coords.iter().any(|t| t < &BigRational::zero()) {
            return Err(PointError::BadCoordinates("negative coordinate".into()));
        }
        let sum: BigRational = coords.iter().cloned().sum();
        if !sum.is_one() {
            return Err(PointError::BadCoordinates(format!(
                "coordinates sum to {}, not 1",
                format_rational(&sum)
            )));
        }
        Ok(RealPoint {
            level,
            cell,
            coords,
        })
    }

    pub fn describe(&self, f: &FacialSet) -> String {
        format!(
            "[{}; {}]",
            f.level(self.level).name(self.cell),
            self.coords
                .iter()
                .map(format_rational)
                .collect::<Vec<_>>()
                .join(",")
        )
    }

    /// One quotient move at coordinate slot `k` (which must be zero):
    /// `(x, ..., t_k = 0, ...) -> (s d_k x, 0, t_0, ..., ^t_k, ...)`.
    pub fn quotient_move(&self, f: &FacialSet, k: usize) -> Result<RealPoint, PointError> {
        if !f.has_contraction() {
            return Err(PointError::MissingContraction);
        }
        if !self.coords[k].is_zero() {
            return Err(PointError::BadCoordinates(format!(
                "move at slot {k} needs t_{k} = 0"
            )));
        }
        let dk = if self.level == 0 {
            // d_0 out of level 0 is the augmentation; s brings it back up.
            f.augment_cell(self.cell)
        } else {
            f.face(self.level, k, self.cell)
        };
        let cell = f.s(self.level, dk);
        let mut coords = Vec::with_capacity(self.coords.len());
        coords.push(BigRational::zero());
        for (i, t) in self.coords.iter().enumerate() {
            if i != k {
                coords.push(t.clone());
            }
        }
        Ok(RealPoint {
            level: self.level,
            cell,
            coords,
        })
    }

    fn zero_slots(&self) -> Vec<usize> {
        (0..self.coords.len())
            .filter(|&i| self.coords[i].is_zero())
            .collect()
    }

    /// Deterministic normal form: repeatedly apply the quotient move at the
    /// smallest zero slot that changes the representative. A revisited
    /// representative is a hard failure, not a silent fallback.
    pub fn canonicalize(&self, f: &FacialSet) -> Result<RealPoint, PointError> {
        if !f.has_contraction() {
            return Err(PointError::MissingContraction);
        }
        let mut current = self.clone();
        let mut visited: BTreeSet<RealPoint> = BTreeSet::new();
        visited.insert(current.clone());
        loop {
            let mut next = None;
            for k in current.zero_slots() {
                let cand = current.quotient_move(f, k)?;
                if cand != current {
                    next = Some(cand);
                    break;
                }
            }
            match next {
                None => return Ok(current),
                Some(p) => {
                    if !visited.insert(p.clone()) {
                        return Err(PointError::RewriteCycle(p.describe(f)));
                    }
                    current = p;
                }
            }
        }
    }

    /// All normal forms reachable by any rewrite order; a singleton on every
    /// tested instance (the empirical confluence of the quotient relation).
    pub fn normal_forms_all_orders(
        &self,
        f: &FacialSet,
        budget: usize,
    ) -> Result<BTreeSet<RealPoint>, PointError> {
        let mut seen: BTreeSet<RealPoint> = BTreeSet::new();
        let mut terminal: BTreeSet<RealPoint> = BTreeSet::new();
        let mut stack = vec![self.clone()];
        while let Some(p) = stack.pop() {
            if !seen.insert(p.clone()) {
                continue;
            }
            if seen.len() > budget {
                return Err(PointError::RewriteCycle(format!(
                    "rewrite graph exceeded {budget} states"
                )));
            }
            let mut moved = false;
            for k in p.zero_slots() {
                let cand = p.quotient_move(f, k)?;
                if cand != p {
                    moved = true;
                    stack.push(cand);
                }
            }
            if !moved {
                terminal.insert(p);
            }
        }
        Ok(terminal)
    }

    /// The stage inclusion `[x, t] -> [s x, 0, t]`, canonicalized.
    pub fn include_up(&self, f: &FacialSet) -> Result<RealPoint, PointError> {
        if self.level + 1 > f.top() {
            return Err(PointError::StageOverflow(self.level + 1, f.top()));
        }
        let cell = f.s(self.level + 1, self.cell);
        let mut coords = vec![BigRational::zero()];
        coords.extend(self.coords.iter().cloned());
        RealPoint {
            level: self.level + 1,
            cell,
            coords,
        }
        .canonicalize(f)
    }

    /// The canonical map to the augmentation target: `(d_0)^{n+1} x`.
    pub fn augment(&self, f: &FacialSet) -> Result<usize, PointError> {
        if !f.has_augmentation() {
            return Err(PointError::MissingAugmentation);
        }
        Ok(f.d0_to_target(self.level, self.cell))
    }

    /// The contraction homotopy `H([x,t], u) = [s x, u, (1-u)t]` one stage up.
    pub fn homotopy(&self, f: &FacialSet, u: &BigRational) -> Result<RealPoint, PointError> {
        if u < &BigRational::zero() || u > &BigRational::one() {
            return Err(PointError::ParameterRange(format_rational(u)));
        }
        if self.level + 1 > f.top() {
            return Err(PointError::StageOverflow(self.level + 1, f.top()));
        }
        let cell = f.s(self.level + 1, self.cell);
        let scale = BigRational::one() - u;
        let mut coords = vec![u.clone()];
        coords.extend(self.coords.iter().map(|t| t * &scale));
        RealPoint {
            level: self.level + 1,
            cell,
            coords,
        }
        .canonicalize(f)
    }

    /// Image in the pointed realization: the basepoint when the canonical
    /// cell is a basepoint cell, the same data otherwise.
    pub fn pointed_collapse(&self, f: &FacialSet) -> Result<PointedPoint, PointError> {
        let p = self.canonicalize(f)?;
        if p.cell == f.level(p.level).basepoint() {
            Ok(PointedPoint::Basepoint)
        } else {
            Ok(PointedPoint::Cell(p))
        }
    }
}

/// A point of the pointed realization: all basepoint-cell simplices are a
/// single point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PointedPoint {
    Basepoint,
    Cell(RealPoint),
}

impl PointedPoint {
    /// The pointed canonical map to the augmentation target.
    pub fn augment(&self, f: &FacialSet) -> Result<usize, PointError> {
        if !f.has_augmentation() {
            return Err(PointError::MissingAugmentation);
        }
        match self {
            PointedPoint::Basepoint => {
                Ok(f.augmentation().unwrap().target.basepoint())
            }
            PointedPoint::Cell(p) => p.augment(f),
        }
    }
}

/// The section `σ_n(x) = [s^{n+1} x, 0, ..., 0, 1]` of the canonical map.
pub fn section_sigma(f: &FacialSet, x: usize, n: usize) -> Result<RealPoint, PointError> {
    if !f.has_contraction() {
        return Err(PointError::MissingContraction);
    }
    if n > f.top() {
        return Err(PointError::StageOverflow(n, f.top()));
    }
    let mut cell = f.s(0, x);
    for k in 1..=n {
        cell = f.s(k, cell);
    }
    let mut coords = vec![BigRational::zero(); n];
    coords.push(BigRational::one());
    RealPoint { level: n, cell, coords }.canonicalize(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::facial::{Augmentation, Contraction, FacialSet, Level};
    use crate::ratio::{rat, rat_int};

    /// P-style resolution of a point over the two-element set {*, a}:
    /// levels {*, a} x ... no — the simplest contracted resolution with two
    /// cells per level: level k = {*, a} with all faces/contractions fixing
    /// names. Small but enough to drive the rewrite engine.
    fn tiny_contracted() -> FacialSet {
        let mk = || Level::new(vec!["*".into(), "a".into()], "*").unwrap();
        let levels = vec![mk(), mk(), mk()];
        let ident = vec![0usize, 1];
        let faces = vec![
            vec![ident.clone(), ident.clone()],
            vec![ident.clone(), ident.clone(), ident.clone()],
        ];
        let aug = Augmentation {
            target: mk(),
            map: ident.clone(),
        };
        let con = Contraction {
            maps: vec![ident.clone(), ident.clone(), ident],
        };
        FacialSet::new(levels, faces, Some(aug), Some(con)).unwrap()
    }

    #[test]
    fn interior_points_are_canonical() {
        let f = tiny_contracted();
        let p = RealPoint::new(1, 1, vec![rat(1, 2), rat(1, 2)]).unwrap();
        assert_eq!(p.canonicalize(&f).unwrap(), p);
    }

    #[test]
    fn coordinate_checks() {
        assert!(RealPoint::new(1, 0, vec![rat(1, 2), rat(1, 3)]).is_err());
        assert!(RealPoint::new(1, 0, vec![rat(3, 2), rat(-1, 2)]).is_err());
        assert!(RealPoint::new(0, 0, vec![rat_int(1)]).is_ok());
    }

    #[test]
    fn section_at_stage_zero_is_single_coordinate() {
        let f = tiny_contracted();
        let s = section_sigma(&f, 1, 0).unwrap();
        assert_eq!(s.level, 0);
        assert_eq!(s.coords, vec![rat_int(1)]);
    }

    #[test]
    fn augment_section_is_identity() {
        let f = tiny_contracted();
        for n in 0..=2 {
            for x in 0..2 {
                let p = section_sigma(&f, x, n).unwrap();
                assert_eq!(p.augment(&f).unwrap(), x);
            }
        }
    }

    #[test]
    fn homotopy_endpoints() {
        let f = tiny_contracted();
        let p = RealPoint::new(1, 1, vec![rat(1, 3), rat(2, 3)]).unwrap();
        let h0 = p.homotopy(&f, &rat_int(0)).unwrap();
        assert_eq!(h0, p.include_up(&f).unwrap());
        let h1 = p.homotopy(&f, &rat_int(1)).unwrap();
        let sigma = section_sigma(&f, p.augment(&f).unwrap(), 2).unwrap();
        assert_eq!(h1, sigma);
        assert!(p.homotopy(&f, &rat(3, 2)).is_err());
    }

    #[test]
    fn confluence_on_tiny_instance() {
        let f = tiny_contracted();
        for cell in 0..2 {
            let p = RealPoint::new(2, cell, vec![rat_int(0), rat_int(0), rat_int(1)]).unwrap();
            let nfs = p.normal_forms_all_orders(&f, 1000).unwrap();
            assert_eq!(nfs.len(), 1);
            assert_eq!(nfs.into_iter().next().unwrap(), p.canonicalize(&f).unwrap());
        }
    }

    #[test]
    fn basepoint_collapses() {
        let f = tiny_contracted();
        let p = RealPoint::new(1, 0, vec![rat(1, 4), rat(3, 4)]).unwrap();
        assert_eq!(p.pointed_collapse(&f).unwrap(), PointedPoint::Basepoint);
        let q = RealPoint::new(1, 1, vec![rat(1, 4), rat(3, 4)]).unwrap();
        assert!(matches!(
            q.pointed_collapse(&f).unwrap(),
            PointedPoint::Cell(_)
        ));
    }
}
