//! Exact piecewise-linear Moore loops in `Q^d`: strictly associative
//! concatenation, reduced-suspension points, the evaluation map, and the
//! loop-to-suspension section whose retraction identity is checked pointwise
//! with no tolerances.

use num::rational::BigRational;
use num::{One, Zero};

use crate::error::StructureError;
use crate::facial::ValidationReport;
use crate::facial::Violation;
use crate::ratio::format_rational;

pub type Point = Vec<BigRational>;

fn origin(dim: usize) -> Point {
    vec![BigRational::zero(); dim]
}

fn lerp(a: &Point, b: &Point, t: &BigRational) -> Point {
    a.iter()
        .zip(b)
        .map(|(x, y)| x + (y - x) * t)
        .collect()
}

/// A Moore loop: breakpoints `(time, point)` with strictly increasing times
/// from `0` to the loop length, linear interpolation in between, and both
/// endpoints at the origin. Canonical form merges collinear breakpoints, so
/// equality of loops is literal equality of data.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MooreLoop {
    dim: usize,
    breakpoints: Vec<(BigRational, Point)>,
}

impl MooreLoop {
    pub fn new(
        dim: usize,
        breakpoints: Vec<(BigRational, Point)>,
    ) -> Result<MooreLoop, StructureError> {
        if breakpoints.is_empty() {
            return Err(StructureError::new("a loop needs at least one breakpoint"));
        }
        if breakpoints[0].0 != BigRational::zero() {
            return Err(StructureError::new("first breakpoint time must be 0"));
        }
        for pair in breakpoints.windows(2) {
            if pair[0].0 >= pair[1].0 {
                return Err(StructureError::new("breakpoint times must strictly increase"));
            }
        }
        for (_, p) in &breakpoints {
            if p.len() != dim {
                return Err(StructureError::new("breakpoint dimension mismatch"));
            }
        }
        let zero = origin(dim);
        if breakpoints.first().unwrap().1 != zero || breakpoints.last().unwrap().1 != zero {
            return Err(StructureError::new("loops start and end at the origin"));
        }
        Ok(MooreLoop { dim, breakpoints }.canonical())
    }

    /// The unit `c_*`: the unique loop of length 0.
    pub fn unit(dim: usize) -> MooreLoop {
        MooreLoop {
            dim,
            breakpoints: vec![(BigRational::zero(), origin(dim))],
        }
    }

    fn canonical(mut self) -> MooreLoop {
        loop {
            let mut removed = false;
            let mut i = 1;
            while i + 1 < self.breakpoints.len() {
                let (t0, p0) = self.breakpoints[i - 1].clone();
                let (t1, p1) = self.breakpoints[i].clone();
                let (t2, p2) = self.breakpoints[i + 1].clone();
                let u = (&t1 - &t0) / (&t2 - &t0);
                if p1 == lerp(&p0, &p2, &u) {
                    self.breakpoints.remove(i);
                    removed = true;
                } else {
                    i += 1;
                }
            }
            if !removed {
                break;
            }
        }
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn length(&self) -> BigRational {
        self.breakpoints.last().unwrap().0.clone()
    }

    pub fn is_unit(&self) -> bool {
        self.length().is_zero()
    }

    pub fn breakpoints(&self) -> &[(BigRational, Point)] {
        &self.breakpoints
    }

    /// Exact evaluation; constant at the origin beyond the length.
    pub fn eval(&self, u: &BigRational) -> Point {
        if u <= &BigRational::zero() || u >= &self.length() {
            return origin(self.dim);
        }
        let idx = self
            .breakpoints
            .partition_point(|(t, _)| t <= u);
        let (t0, p0) = &self.breakpoints[idx - 1];
        if t0 == u {
            return p0.clone();
        }
        let (t1, p1) = &self.breakpoints[idx];
        lerp(p0, p1, &((u - t0) / (t1 - t0)))
    }

    /// Moore concatenation: lengths add; strictly associative and unital on
    /// canonical forms.
    pub fn concat(&self, other: &MooreLoop) -> MooreLoop {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let shift = self.length();
        let mut breakpoints = self.breakpoints.clone();
        for (t, p) in other.breakpoints.iter().skip(1) {
            breakpoints.push((t + &shift, p.clone()));
        }
        MooreLoop {
            dim: self.dim,
            breakpoints,
        }
        .canonical()
    }

    pub fn inverse(&self) -> MooreLoop {
        let len = self.length();
        let mut breakpoints: Vec<(BigRational, Point)> = self
            .breakpoints
            .iter()
            .rev()
            .map(|(t, p)| (&len - t, p.clone()))
            .collect();
        if breakpoints.is_empty() {
            breakpoints.push((BigRational::zero(), origin(self.dim)));
        }
        MooreLoop {
            dim: self.dim,
            breakpoints,
        }
        .canonical()
    }

    /// The unit-interval reparameterization `ω_ℓ(s) = ω(ℓ s)`: times scaled
    /// to `[0, 1]`. The unit stays the unit.
    pub fn reparam_unit(&self) -> MooreLoop {
        if self.is_unit() {
            return self.clone();
        }
        let len = self.length();
        MooreLoop {
            dim: self.dim,
            breakpoints: self
                .breakpoints
                .iter()
                .map(|(t, p)| (t / &len, p.clone()))
                .collect(),
        }
    }
}

/// A point of the reduced suspension: the basepoint, or a nonconstant loop
/// with a suspension parameter strictly inside `(0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SuspPoint {
    Base,
    Point { loop_: MooreLoop, t: BigRational },
}

impl SuspPoint {
    /// Normalizing constructor: `t ∈ {0, 1}` or the constant loop collapse
    /// to the basepoint.
    pub fn new(loop_: MooreLoop, t: BigRational) -> SuspPoint {
        if loop_.is_unit() || t.is_zero() || t.is_one() {
            SuspPoint::Base
        } else {
            SuspPoint::Point { loop_, t }
        }
    }

    /// Evaluation `[α, t] -> α(t · ℓ_α)`; the basepoint goes to the origin.
    pub fn ev(&self, dim: usize) -> Point {
        match self {
            SuspPoint::Base => origin(dim),
            SuspPoint::Point { loop_, t } => loop_.eval(&(t * loop_.length())),
        }
    }
}

/// The image of a Moore loop under the loop-to-suspension section: a Moore
/// path of suspension points of the same length, stored symbolically. The
/// loop component is the unit reparameterization, constant in the path
/// parameter; only the suspension coordinate varies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaPath {
    source: MooreLoop,
    unit_loop: MooreLoop,
}

pub fn gamma(omega: &MooreLoop) -> GammaPath {
    GammaPath {
        unit_loop: omega.reparam_unit(),
        source: omega.clone(),
    }
}

impl GammaPath {
    pub fn length(&self) -> BigRational {
        self.source.length()
    }

    /// `u -> [ω_ℓ, u/ℓ]` for `u < ℓ`, the basepoint beyond.
    pub fn eval(&self, u: &BigRational) -> SuspPoint {
        let len = self.length();
        if u <= &BigRational::zero() || u >= &len || len.is_zero() {
            return SuspPoint::Base;
        }
        SuspPoint::new(self.unit_loop.clone(), u / &len)
    }

    /// Pointwise evaluation collapses the suspension coordinate back to the
    /// loop: the exact form of the retraction composite.
    pub fn ev_pointwise(&self) -> MooreLoop {
        self.source.clone()
    }
}

/// Bar-construction faces on a tuple of loops: drop-first,
/// multiply-adjacent, drop-last.
pub fn bar_face(loops: &[MooreLoop], i: usize) -> Vec<MooreLoop> {
    let n = loops.len();
    assert!(i <= n);
    if i == 0 {
        loops[1..].to_vec()
    } else if i == n {
        loops[..n - 1].to_vec()
    } else {
        let mut out = Vec::with_capacity(n - 1);
        out.extend_from_slice(&loops[..i - 1]);
        out.push(loops[i - 1].concat(&loops[i]));
        out.extend_from_slice(&loops[i + 1..]);
        out
    }
}

/// Exact check of `d_i d_j = d_{j-1} d_i` (i < j) on one tuple of loops.
pub fn bar_identities_on_loops(loops: &[MooreLoop]) -> ValidationReport {
    let n = loops.len();
    let mut report = ValidationReport::default();
    for j in 1..=n {
        for i in 0..j {
            let lhs = bar_face(&bar_face(loops, j), i);
            let rhs = bar_face(&bar_face(loops, i), j - 1);
            if lhs != rhs {
                report.violations.push(Violation {
                    law: "d_i d_j = d_{j-1} d_i".into(),
                    level: n as i64,
                    indices: vec![i as i64, j as i64],
                    cell: format!("tuple of {n} loops"),
                    lhs: format!("{} loops", lhs.len()),
                    rhs: format!("{} loops", rhs.len()),
                });
            }
        }
    }
    report
}

/// Witness-producing retraction check at one time.
pub fn retraction_witness(omega: &MooreLoop, u: &BigRational) -> Option<String> {
    let lhs = gamma(omega).eval(u).ev(omega.dim());
    let rhs = omega.eval(u);
    (lhs != rhs).then(|| {
        format!(
            "ev(γ(ω)({}))  !=  ω({})",
            format_rational(u),
            format_rational(u)
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::{rat, rat_int};

    fn square_loop() -> MooreLoop {
        // Unit square, length 4: (0,0) -> (1,0) -> (1,1) -> (0,1) -> (0,0).
        MooreLoop::new(
            2,
            vec![
                (rat_int(0), vec![rat_int(0), rat_int(0)]),
                (rat_int(1), vec![rat_int(1), rat_int(0)]),
                (rat_int(2), vec![rat_int(1), rat_int(1)]),
                (rat_int(3), vec![rat_int(0), rat_int(1)]),
                (rat_int(4), vec![rat_int(0), rat_int(0)]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn unit_laws_and_associativity() {
        let w = square_loop();
        let c = MooreLoop::unit(2);
        assert_eq!(w.concat(&c), w);
        assert_eq!(c.concat(&w), w);
        let a = square_loop();
        let b = square_loop().inverse();
        assert_eq!(a.concat(&b).concat(&w), a.concat(&b.concat(&w)));
    }

    #[test]
    fn reparam_of_square_at_one_eighth() {
        let w = square_loop();
        let wt = w.reparam_unit();
        assert_eq!(wt.length(), rat_int(1));
        assert_eq!(wt.eval(&rat(1, 8)), vec![rat(1, 2), rat_int(0)]);
    }

    #[test]
    fn ev_of_square_quarter() {
        let w = square_loop();
        let p = SuspPoint::new(w.clone(), rat(1, 4));
        assert_eq!(p.ev(2), vec![rat_int(1), rat_int(0)]);
        assert_eq!(SuspPoint::Base.ev(2), vec![rat_int(0), rat_int(0)]);
    }

    #[test]
    fn gamma_retraction_is_exact() {
        let w = square_loop();
        let g = gamma(&w);
        assert_eq!(g.length(), w.length());
        for u in [rat_int(0), rat(1, 3), rat_int(2), rat(7, 2), rat_int(4), rat_int(5)] {
            assert!(retraction_witness(&w, &u).is_none(), "u = {u}");
        }
        assert_eq!(g.ev_pointwise(), w);
        // γ(square)(2) = [reparameterized square, 1/2]
        match g.eval(&rat_int(2)) {
            SuspPoint::Point { t, .. } => assert_eq!(t, rat(1, 2)),
            SuspPoint::Base => panic!("interior point expected"),
        }
        let c = MooreLoop::unit(2);
        assert_eq!(gamma(&c).eval(&rat_int(0)), SuspPoint::Base);
        assert_eq!(gamma(&c).length(), rat_int(0));
    }

    #[test]
    fn bar_identities_hold_on_tuples() {
        let tuple = vec![square_loop(), square_loop().inverse(), MooreLoop::unit(2)];
        assert!(bar_identities_on_loops(&tuple).is_valid());
    }

    #[test]
    fn degenerate_breakpoints_rejected() {
        assert!(MooreLoop::new(1, vec![(rat_int(1), vec![rat_int(0)])]).is_err());
        assert!(MooreLoop::new(
            1,
            vec![
                (rat_int(0), vec![rat_int(0)]),
                (rat_int(0), vec![rat_int(0)])
            ]
        )
        .is_err());
        assert!(MooreLoop::new(
            1,
            vec![
                (rat_int(0), vec![rat_int(0)]),
                (rat_int(1), vec![rat_int(1)])
            ]
        )
        .is_err());
    }
}
