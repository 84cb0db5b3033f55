//! The rectification calculus on truncated facial sets: the auxiliary
//! complexes `J` and `I` over a facial set, the comparison morphisms
//! `η, ζ, π, π̄` and the non-facial sections `φ`, the contraction homotopies,
//! the rectified section `ψ̄` over a bifacial grid with row contractions, and
//! the section-on-homology pipeline built from all of them.
//!
//! Points carry a formal word of face operators, a cell, and exact rational
//! coordinates; equality is equality of canonical forms under the two
//! rewriting relations:
//!   (A) a vanishing last coordinate pushes the last operator into the cell;
//!   (B) at a vanishing interior coordinate, an ascending adjacent operator
//!       pair `(i_p, i_{p+1})` with `i_p < i_{p+1}` rewrites to
//!       `(i_{p+1}-1, i_p)`.
//! Rule (A) runs to exhaustion first, then rule (B) scans leftmost-first to
//! a fixpoint; (A) shortens the word and (B) strictly lowers the index sum,
//! so the policy terminates. Confluence over arbitrary rewrite orders is
//! property-checked, not assumed.

use std::collections::BTreeSet;

use num::rational::BigRational;
use num::{One, Zero};

use crate::bifacial::BifacialSet;
use crate::chains::{induced_map, ChainMap};
use crate::delta::{DeltaComplex, DeltaMap, DeltaPresentation, PieceRule, Tower};
use crate::error::{PointError, StructureError};
use crate::facial::FacialSet;
use crate::points::RealPoint;
use crate::ratio::format_rational;

/// Which of the two auxiliary constructions a point lives in: `J` carries
/// `m + 1` coordinates over an `m`-letter word, `I` carries `m + 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Kind {
    J,
    I,
}

/// A point of `J^n_k(Y)` or `I^n_k(Y)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct OpPoint {
    pub kind: Kind,
    pub k: usize,
    pub word: Vec<usize>,
    pub cell: usize,
    pub coords: Vec<BigRational>,
}

impl Kind {
    fn coord_len(self, word_len: usize) -> usize {
        match self {
            Kind::J => word_len + 1,
            Kind::I => word_len + 2,
        }
    }
}

impl OpPoint {
    pub fn new(
        kind: Kind,
        y: &FacialSet,
        n: usize,
        k: usize,
        word: Vec<usize>,
        cell: usize,
        coords: Vec<BigRational>,
    ) -> Result<OpPoint, PointError> {
        let m = word.len();
        if k > n || m > n - k {
            return Err(PointError::Structure(format!(
                "word of length {m} does not fit at level {k} of an {n}-truncated object"
            )));
        }
        if coords.len() != kind.coord_len(m) {
            return Err(PointError::BadCoordinates(format!(
                "word length {m} needs {} coordinates, got {}",
                kind.coord_len(m),
                coords.len()
            )));
        }
        for (j, &i) in word.iter().enumerate() {
            if i > k + j + 1 {
                return Err(PointError::Structure(format!(
                    "operator index {i} at position {} exceeds its bound {}",
                    j + 1,
                    k + j + 1
                )));
            }
        }
        if k + m > y.top() {
            return Err(PointError::Structure(format!(
                "cell level {} beyond the facial set's top level {}",
                k + m,
                y.top()
            )));
        }
        if cell >= y.level(k + m).size() {
            return Err(PointError::Structure("cell out of range".into()));
        }
        if coords.iter().any(|t| t < &BigRational::zero()) {
            return Err(PointError::BadCoordinates("negative coordinate".into()));
        }
        let sum: BigRational = coords.iter().cloned().sum();
        if !sum.is_one() {
            return Err(PointError::BadCoordinates(format!(
                "coordinates sum to {}",
                format_rational(&sum)
            )));
        }
        Ok(OpPoint {
            kind,
            k,
            word,
            cell,
            coords,
        })
    }

    pub fn describe(&self, y: &FacialSet) -> String {
        format!(
            "({}; {}; {})",
            self.word
                .iter()
                .map(|i| format!("d{i}"))
                .collect::<Vec<_>>()
                .join(""),
            y.level(self.k + self.word.len()).name(self.cell),
            self.coords
                .iter()
                .map(format_rational)
                .collect::<Vec<_>>()
                .join(",")
        )
    }

    fn word_slot(&self, p: usize) -> usize {
        // Coordinate slot paired with the operator pair (p, p+1), 1-indexed.
        match self.kind {
            Kind::J => p,
            Kind::I => p + 1,
        }
    }

    /// Rule (A) once: needs a vanishing last coordinate and a nonempty word.
    fn rule_a(&self, y: &FacialSet) -> Option<OpPoint> {
        let m = self.word.len();
        if m == 0 || !self.coords.last().unwrap().is_zero() {
            return None;
        }
        let mut out = self.clone();
        let i = out.word.pop().unwrap();
        out.cell = y.face(self.k + m, i, self.cell);
        out.coords.pop();
        Some(out)
    }

    /// Rule (B) at pair `p` (1-indexed), if enabled there.
    fn rule_b(&self, p: usize) -> Option<OpPoint> {
        let m = self.word.len();
        if p >= m || !self.coords[self.word_slot(p)].is_zero() {
            return None;
        }
        let (a, b) = (self.word[p - 1], self.word[p]);
        if a >= b {
            return None;
        }
        let mut out = self.clone();
        out.word[p - 1] = b - 1;
        out.word[p] = a;
        Some(out)
    }

    /// Deterministic normal form: (A) exhaustively, then (B) leftmost-first
    /// to a fixpoint.
    pub fn canonicalize(&self, y: &FacialSet) -> OpPoint {
        let mut cur = self.clone();
        while let Some(next) = cur.rule_a(y) {
            cur = next;
        }
        'outer: loop {
            for p in 1..cur.word.len() {
                if let Some(next) = cur.rule_b(p) {
                    cur = next;
                    continue 'outer;
                }
            }
            return cur;
        }
    }

    /// Every normal form reachable under any interleaving of (A) and (B)
    /// moves; the confluence suite requires a singleton.
    pub fn normal_forms_all_orders(&self, y: &FacialSet, budget: usize) -> BTreeSet<OpPoint> {
        let mut seen = BTreeSet::new();
        let mut terminal = BTreeSet::new();
        let mut stack = vec![self.clone()];
        while let Some(p) = stack.pop() {
            if !seen.insert(p.clone()) || seen.len() > budget {
                continue;
            }
            let mut successors = Vec::new();
            if let Some(q) = p.rule_a(y) {
                successors.push(q);
            }
            for slot in 1..p.word.len() {
                if let Some(q) = p.rule_b(slot) {
                    successors.push(q);
                }
            }
            if successors.is_empty() {
                terminal.insert(p);
            } else {
                stack.extend(successors);
            }
        }
        terminal
    }

    /// The face operator of the auxiliary facial structure: prepend the
    /// formal operator and a vanishing coordinate in the kind's slot.
    pub fn face(&self, y: &FacialSet, n: usize, i: usize) -> Result<OpPoint, PointError> {
        if self.k == 0 || i > self.k {
            return Err(PointError::Structure(format!(
                "face index {i} out of range at level {}",
                self.k
            )));
        }
        let mut word = Vec::with_capacity(self.word.len() + 1);
        word.push(i);
        word.extend_from_slice(&self.word);
        let coords = match self.kind {
            Kind::J => {
                let mut c = vec![BigRational::zero()];
                c.extend(self.coords.iter().cloned());
                c
            }
            Kind::I => {
                let mut c = vec![self.coords[0].clone(), BigRational::zero()];
                c.extend(self.coords[1..].iter().cloned());
                c
            }
        };
        Ok(
            OpPoint::new(self.kind, y, n, self.k - 1, word, self.cell, coords)?
                .canonicalize(y),
        )
    }

    /// The contraction homotopy `(t_0, ..) -> (u + (1-u)t_0, (1-u)t_1, ..)`.
    pub fn homotopy(
        &self,
        y: &FacialSet,
        u: &BigRational,
    ) -> Result<OpPoint, PointError> {
        if u < &BigRational::zero() || u > &BigRational::one() {
            return Err(PointError::ParameterRange(format_rational(u)));
        }
        let scale = BigRational::one() - u;
        let mut coords: Vec<BigRational> =
            self.coords.iter().map(|t| t * &scale).collect();
        coords[0] += u;
        let mut out = self.clone();
        out.coords = coords;
        Ok(out.canonicalize(y))
    }

    /// The composite `∂_{i_1} ... ∂_{i_m}` applied to the carried cell: the
    /// projection to the plain truncation.
    pub fn project(&self, y: &FacialSet) -> usize {
        let mut cell = self.cell;
        for (j, &i) in self.word.iter().enumerate().rev() {
            cell = y.face(self.k + j + 1, i, cell);
        }
        cell
    }
}

/// `η_k(y) = (y, 1, 0)`, a facial map into the `I` construction.
pub fn eta(y: &FacialSet, n: usize, k: usize, cell: usize) -> Result<OpPoint, PointError> {
    OpPoint::new(
        Kind::I,
        y,
        n,
        k,
        vec![],
        cell,
        vec![BigRational::one(), BigRational::zero()],
    )
}

/// `ζ_k`: prepend a vanishing zeroth coordinate; a facial `J -> I` map.
pub fn zeta(y: &FacialSet, n: usize, p: &OpPoint) -> Result<OpPoint, PointError> {
    if p.kind != Kind::J {
        return Err(PointError::Structure("ζ expects a J point".into()));
    }
    let mut coords = vec![BigRational::zero()];
    coords.extend(p.coords.iter().cloned());
    Ok(
        OpPoint::new(Kind::I, y, n, p.k, p.word.clone(), p.cell, coords)?
            .canonicalize(y),
    )
}

/// `π_k`: project an `I` point to its operator-composite cell.
pub fn pi(y: &FacialSet, p: &OpPoint) -> Result<usize, PointError> {
    if p.kind != Kind::I {
        return Err(PointError::Structure("π expects an I point".into()));
    }
    Ok(p.project(y))
}

/// `π̄_k = π_k ∘ ζ_k` on `J` points.
pub fn pi_bar(y: &FacialSet, p: &OpPoint) -> Result<usize, PointError> {
    if p.kind != Kind::J {
        return Err(PointError::Structure("π̄ expects a J point".into()));
    }
    Ok(p.project(y))
}

/// `φ_k(y) = (y, 1)`: the section of `π̄` that fails to be facial.
pub fn phi(y: &FacialSet, n: usize, k: usize, cell: usize) -> Result<OpPoint, PointError> {
    OpPoint::new(Kind::J, y, n, k, vec![], cell, vec![BigRational::one()])
}

/// A cell witnessing that `φ` does not commute with the face operators, if
/// one exists: `Jd_i(φ(c))` against `φ(d_i c)`.
pub fn phi_facial_violation(y: &FacialSet, n: usize) -> Option<String> {
    for k in 1..=n.min(y.top()) {
        for cell in 0..y.level(k).size() {
            for i in 0..=k {
                let lhs = phi(y, n, k, cell)
                    .and_then(|p| p.face(y, n, i))
                    .expect("φ points are well-formed");
                let rhs = phi(y, n, k - 1, y.face(k, i, cell)).expect("well-formed");
                if lhs != rhs.canonicalize(y) {
                    return Some(format!(
                        "Jd_{i} φ({}) = {} but φ(d_{i} ·) = {}",
                        y.level(k).name(cell),
                        lhs.describe(y),
                        rhs.describe(y)
                    ));
                }
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Cellular models.
// ---------------------------------------------------------------------------

/// The derived Δ-complex of one level of the `J`/`I` construction together
/// with the word-indexed piece table.
pub struct OpComplex {
    pub kind: Kind,
    pub k: usize,
    pub n: usize,
    pub complex: DeltaComplex,
    /// (word, cell) -> piece index, in enumeration order.
    pieces: Vec<(Vec<usize>, usize)>,
}

fn words(k: usize, m: usize) -> Vec<Vec<usize>> {
    // i_j ranges over 0..=k+j (1-indexed j).
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for j in 1..=m {
        let mut next = Vec::new();
        for w in &out {
            for i in 0..=k + j {
                let mut w2 = w.clone();
                w2.push(i);
                next.push(w2);
            }
        }
        out = next;
    }
    out
}

impl OpComplex {
    pub fn build(
        kind: Kind,
        y: &FacialSet,
        n: usize,
        k: usize,
    ) -> Result<OpComplex, StructureError> {
        if n > y.top() {
            return Err(StructureError::new(format!(
                "truncation level {n} beyond the facial set's top level {}",
                y.top()
            )));
        }
        let mut pres = DeltaPresentation::default();
        let mut pieces = Vec::new();
        let mut piece_of = std::collections::BTreeMap::new();
        for m in 0..=n - k {
            for w in words(k, m) {
                for cell in 0..y.level(k + m).size() {
                    let dim = match kind {
                        Kind::J => m,
                        Kind::I => m + 1,
                    };
                    let name = format!(
                        "{}{};{}",
                        match kind {
                            Kind::J => "J",
                            Kind::I => "I",
                        },
                        w.iter().map(|i| format!("d{i}")).collect::<Vec<_>>().join(""),
                        y.level(k + m).name(cell)
                    );
                    let idx = pres.add_piece(name, dim);
                    piece_of.insert((w.clone(), cell), idx);
                    pieces.push((w.clone(), cell));
                }
            }
        }
        // Rule (A): the face away from the last coordinate is the whole
        // simplex of the piece with the last operator absorbed.
        for (idx, (w, cell)) in pieces.iter().enumerate() {
            let m = w.len();
            if m == 0 {
                continue;
            }
            let dim = match kind {
                Kind::J => m,
                Kind::I => m + 1,
            };
            let target_cell = y.face(k + m, w[m - 1], *cell);
            let target = piece_of[&(w[..m - 1].to_vec(), target_cell)];
            let s: Vec<usize> = (0..dim).collect();
            pres.glue(idx, s.clone(), target, s);
            // Rule (B): ascending adjacent pairs glue equal-dimension faces.
            for p in 1..m {
                if w[p - 1] < w[p] {
                    let mut w2 = w.clone();
                    w2[p - 1] = w[p] - 1;
                    w2[p] = w[p - 1];
                    let other = piece_of[&(w2, *cell)];
                    let slot = match kind {
                        Kind::J => p,
                        Kind::I => p + 1,
                    };
                    let s: Vec<usize> = (0..=dim).filter(|&x| x != slot).collect();
                    pres.glue(idx, s.clone(), other, s);
                }
            }
        }
        let complex = pres.derive()?;
        Ok(OpComplex {
            kind,
            k,
            n,
            complex,
            pieces,
        })
    }

    pub fn piece(&self, word: &[usize], cell: usize) -> Option<usize> {
        self.pieces
            .iter()
            .position(|(w, c)| w == word && *c == cell)
    }

    pub fn piece_data(&self, idx: usize) -> &(Vec<usize>, usize) {
        &self.pieces[idx]
    }

    /// The face map one level down, as a cellular map.
    pub fn face_map(&self, y: &FacialSet, dst: &OpComplex, i: usize) -> Result<DeltaMap, StructureError> {
        debug_assert_eq!(dst.k + 1, self.k);
        let rules: Vec<PieceRule> = self
            .pieces
            .iter()
            .map(|(w, cell)| {
                let mut word = Vec::with_capacity(w.len() + 1);
                word.push(i);
                word.extend_from_slice(w);
                let target_piece = dst.piece(&word, *cell).ok_or_else(|| {
                    StructureError::new(format!("missing piece for word {word:?}"))
                })?;
                let dim = self.kind.coord_len(w.len()) - 1;
                let coord_map = match self.kind {
                    Kind::J => (0..=dim).map(|j| j + 1).collect(),
                    Kind::I => (0..=dim).map(|j| if j == 0 { 0 } else { j + 1 }).collect(),
                };
                Ok(PieceRule {
                    target_piece,
                    coord_map,
                })
            })
            .collect::<Result<_, StructureError>>()?;
        let _ = y;
        DeltaMap::from_rules(&self.complex, &dst.complex, &rules)
    }
}

/// Discrete complex of one truncation level.
pub fn t_complex(y: &FacialSet, k: usize) -> DeltaComplex {
    DeltaComplex::discrete(y.level(k).names())
}

/// The three auxiliary towers over a facial set, with their comparison
/// chain maps, all validated.
pub struct ComparisonTowers {
    pub t: Tower,
    pub i: Tower,
    pub j: Tower,
    pub eta: ChainMap,
    pub zeta: ChainMap,
    pub pi: ChainMap,
    pub pi_bar: ChainMap,
    pub i_levels: Vec<OpComplex>,
    pub j_levels: Vec<OpComplex>,
}

pub fn comparison_towers(y: &FacialSet, n: usize) -> Result<ComparisonTowers, StructureError> {
    let t_levels: Vec<DeltaComplex> = (0..=n).map(|k| t_complex(y, k)).collect();
    let t_faces: Vec<Vec<DeltaMap>> = (1..=n)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    let rules: Vec<PieceRule> = (0..y.level(k).size())
                        .map(|c| PieceRule {
                            target_piece: y.face(k, i, c),
                            coord_map: vec![0],
                        })
                        .collect();
                    DeltaMap::from_rules(&t_levels[k], &t_levels[k - 1], &rules)
                })
                .collect::<Result<_, _>>()
        })
        .collect::<Result<_, _>>()?;
    let t = Tower::new(t_levels, t_faces)?;

    let build_tower = |kind: Kind| -> Result<(Tower, Vec<OpComplex>), StructureError> {
        let levels: Vec<OpComplex> = (0..=n)
            .map(|k| OpComplex::build(kind, y, n, k))
            .collect::<Result<_, _>>()?;
        let faces: Vec<Vec<DeltaMap>> = (1..=n)
            .map(|k| {
                (0..=k)
                    .map(|i| levels[k].face_map(y, &levels[k - 1], i))
                    .collect::<Result<_, _>>()
            })
            .collect::<Result<_, _>>()?;
        let tower = Tower::new(levels.iter().map(|l| l.complex.clone()).collect(), faces)?;
        Ok((tower, levels))
    };
    let (i_tower, i_levels) = build_tower(Kind::I)?;
    let (j_tower, j_levels) = build_tower(Kind::J)?;

    // Levelwise comparison maps.
    let eta_maps: Vec<DeltaMap> = (0..=n)
        .map(|k| {
            let rules: Vec<PieceRule> = (0..y.level(k).size())
                .map(|c| PieceRule {
                    target_piece: i_levels[k].piece(&[], c).expect("empty word piece"),
                    coord_map: vec![0],
                })
                .collect();
            DeltaMap::from_rules(&t.levels[k], &i_levels[k].complex, &rules)
        })
        .collect::<Result<_, _>>()?;
    let zeta_maps: Vec<DeltaMap> = (0..=n)
        .map(|k| {
            let rules: Vec<PieceRule> = j_levels[k]
                .pieces
                .iter()
                .map(|(w, c)| {
                    let dim = w.len();
                    PieceRule {
                        target_piece: i_levels[k].piece(w, *c).expect("matching piece"),
                        coord_map: (0..=dim).map(|j| j + 1).collect(),
                    }
                })
                .collect();
            DeltaMap::from_rules(&j_levels[k].complex, &i_levels[k].complex, &rules)
        })
        .collect::<Result<_, _>>()?;
    let project_maps = |levels: &[OpComplex]| -> Result<Vec<DeltaMap>, StructureError> {
        levels
            .iter()
            .enumerate()
            .map(|(k, lvl)| {
                let rules: Vec<PieceRule> = lvl
                    .pieces
                    .iter()
                    .map(|(w, c)| {
                        let mut cell = *c;
                        for (j, &i) in w.iter().enumerate().rev() {
                            cell = y.face(k + j + 1, i, cell);
                        }
                        let dim = lvl.kind.coord_len(w.len()) - 1;
                        PieceRule {
                            target_piece: cell,
                            coord_map: vec![0; dim + 1],
                        }
                    })
                    .collect();
                DeltaMap::from_rules(&lvl.complex, &t.levels[k], &rules)
            })
            .collect()
    };
    let pi_maps = project_maps(&i_levels)?;
    let pi_bar_maps = project_maps(&j_levels)?;

    let eta = t.map_to(&i_tower, &eta_maps)?;
    let zeta = j_tower.map_to(&i_tower, &zeta_maps)?;
    let pi = i_tower.map_to(&t, &pi_maps)?;
    let pi_bar = j_tower.map_to(&t, &pi_bar_maps)?;
    Ok(ComparisonTowers {
        t,
        i: i_tower,
        j: j_tower,
        eta,
        zeta,
        pi,
        pi_bar,
        i_levels,
        j_levels,
    })
}

/// The coning chain homotopy on one `I` (or `J`) level complex witnessing
/// `id ≃ η∘π` (resp. `id ≃ φ∘π̄`): a cell whose representative face misses
/// slot 0 maps to the cone with slot 0 adjoined, others to zero.
pub fn cone_homotopy(level: &OpComplex) -> Vec<crate::matrix::IntMat> {
    use crate::matrix::IntMat;
    use num::bigint::BigInt;
    let dc = &level.complex;
    let mut h = Vec::new();
    for d in 0..dc.cells.len() {
        let rows = dc.cell_count(d + 1);
        let mut m = IntMat::zeros(rows, dc.cell_count(d));
        for (idx, cell) in dc.cells[d].iter().enumerate() {
            let (piece, slots) = &cell.rep;
            if !slots.contains(&0) {
                let mut coned = vec![0usize];
                coned.extend_from_slice(slots);
                if let Some((dd, target)) = dc.class(*piece, &coned) {
                    debug_assert_eq!(dd, d + 1);
                    m.set(target, idx, BigInt::from(1));
                }
            }
        }
        h.push(m);
    }
    h
}

// ---------------------------------------------------------------------------
// The rectified section over a bifacial grid.
// ---------------------------------------------------------------------------

/// The quotient-model row realization `L_k = Z_k^n × Δ^n / ~` as a derived
/// Δ-complex; pieces are the cells of `Z_k^n`.
pub fn l_complex(z: &BifacialSet, k: usize, n: usize) -> Result<DeltaComplex, StructureError> {
    if z.row_contractions.is_none() {
        return Err(StructureError::new("the quotient model needs row contractions"));
    }
    let level = &z.grid[k][n];
    let mut pres = DeltaPresentation::default();
    for c in 0..level.size() {
        pres.add_piece(format!("L{k}:{}", level.name(c)), n);
    }
    if n >= 1 {
        for c in 0..level.size() {
            for i in 0..=n {
                let down = z.row_faces[k][n - 1][i][c];
                let target = z.s(k, n, down);
                let mut s: Vec<usize> = (0..=n).collect();
                s.remove(i);
                pres.glue(c, s, target, (1..=n).collect());
            }
        }
    }
    pres.derive()
}

/// The cell of `Z_k^n` carrying the rectified section of a `J` point:
/// alternating row contractions and column faces, then the remaining
/// contractions up to column `n`.
pub fn psi_bar_cell(z: &BifacialSet, n: usize, k: usize, word: &[usize], cell: usize) -> usize {
    let m = word.len();
    let mut cur = z.s(k + m, 0, cell);
    let mut col = 0usize;
    for j in (1..=m).rev() {
        cur = z.col_face(k + j, col, word[j - 1], cur);
        if j > 1 {
            cur = z.s(k + j - 1, col + 1, cur);
            col += 1;
        }
    }
    while col < n {
        cur = z.s(k, col + 1, cur);
        col += 1;
    }
    cur
}

/// Point-level `ψ̄`: the displayed cell with coordinates padded by zeros,
/// canonicalized in the quotient model of row `k`.
pub fn psi_bar_point(
    z: &BifacialSet,
    n: usize,
    k: usize,
    p: &OpPoint,
) -> Result<RealPoint, PointError> {
    if p.kind != Kind::J {
        return Err(PointError::Structure("ψ̄ expects a J point".into()));
    }
    let m = p.word.len();
    let cell = psi_bar_cell(z, n, k, &p.word, p.cell);
    let mut coords = vec![BigRational::zero(); n - m];
    coords.extend(p.coords.iter().cloned());
    RealPoint::new(n, cell, coords)?.canonicalize(&z.row(k))
}

/// The strict section `ψ_k(c) = [s_k^{n+1} c, 0, ..., 0, 1]`.
pub fn psi_point(z: &BifacialSet, n: usize, k: usize, cell: usize) -> Result<RealPoint, PointError> {
    let mut cur = z.s(k, 0, cell);
    for p in 1..=n {
        cur = z.s(k, p, cur);
    }
    let mut coords = vec![BigRational::zero(); n];
    coords.push(BigRational::one());
    RealPoint::new(n, cur, coords)?.canonicalize(&z.row(k))
}

/// The canonical map `ε_n: L_k -> Z_k^{-1}` on cells: row `d_0` iterated.
pub fn epsilon_cell(z: &BifacialSet, n: usize, k: usize, cell: usize) -> usize {
    let mut cur = cell;
    for p in (1..=n).rev() {
        cur = z.row_faces[k][p - 1][0][cur];
    }
    z.row_aug[k][cur]
}

/// Everything `libman_check` computes for the double realization side.
pub struct SectionTowers {
    pub comparison: ComparisonTowers,
    pub l: Tower,
    pub psi_bar: ChainMap,
    pub epsilon: ChainMap,
}

pub fn section_towers(z: &BifacialSet, n: usize) -> Result<SectionTowers, StructureError> {
    let y = z.target_column();
    let comparison = comparison_towers(&y, n)?;
    let l_levels: Vec<DeltaComplex> = (0..=n)
        .map(|k| l_complex(z, k, n))
        .collect::<Result<_, _>>()?;
    let l_faces: Vec<Vec<DeltaMap>> = (1..=n)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    let rules: Vec<PieceRule> = (0..z.grid[k][n].size())
                        .map(|c| PieceRule {
                            target_piece: z.col_face(k, n, i, c),
                            coord_map: (0..=n).collect(),
                        })
                        .collect();
                    DeltaMap::from_rules(&l_levels[k], &l_levels[k - 1], &rules)
                })
                .collect::<Result<_, _>>()
        })
        .collect::<Result<_, _>>()?;
    let l = Tower::new(l_levels, l_faces)?;

    let psi_bar_maps: Vec<DeltaMap> = (0..=n)
        .map(|k| {
            let lvl = &comparison.j_levels[k];
            let rules: Vec<PieceRule> = lvl
                .pieces
                .iter()
                .map(|(w, c)| {
                    let m = w.len();
                    PieceRule {
                        target_piece: psi_bar_cell(z, n, k, w, *c),
                        coord_map: (0..=m).map(|j| n - m + j).collect(),
                    }
                })
                .collect();
            DeltaMap::from_rules(&lvl.complex, &l.levels[k], &rules)
        })
        .collect::<Result<_, _>>()?;
    let psi_bar = comparison.j.map_to(&l, &psi_bar_maps)?;

    let eps_maps: Vec<DeltaMap> = (0..=n)
        .map(|k| {
            let rules: Vec<PieceRule> = (0..z.grid[k][n].size())
                .map(|c| PieceRule {
                    target_piece: epsilon_cell(z, n, k, c),
                    coord_map: vec![0; n + 1],
                })
                .collect();
            DeltaMap::from_rules(&l.levels[k], &comparison.t.levels[k], &rules)
        })
        .collect::<Result<_, _>>()?;
    let epsilon = l.map_to(&comparison.t, &eps_maps)?;

    Ok(SectionTowers {
        comparison,
        l,
        psi_bar,
        epsilon,
    })
}

// ---------------------------------------------------------------------------
// Realization-order comparison.
// ---------------------------------------------------------------------------

pub struct OrderComparison {
    pub rows_then_cols: Tower,
    pub cols_then_rows: Tower,
    /// Per total degree, the signed bijection matrix.
    pub bijection: ChainMap,
}

/// Both iterated truncated realizations of a bifacial grid (rows first up to
/// `p`, columns up to `n`, and the other order) with the Koszul-signed cell
/// bijection between them.
pub fn bifacial_compare(
    z: &BifacialSet,
    n: usize,
    p: usize,
) -> Result<OrderComparison, StructureError> {
    use crate::matrix::IntMat;
    use num::bigint::BigInt;
    if n + 1 > z.n_rows() || p + 1 > z.n_cols() {
        return Err(StructureError::new(format!(
            "grid too small for truncations n = {n}, p = {p}"
        )));
    }
    // Rows first: stage k carries the realization of row k up to p.
    let row_complexes: Vec<DeltaComplex> = (0..=n)
        .map(|k| DeltaComplex::from_facial(&z.row(k), p))
        .collect::<Result<_, _>>()?;
    let row_offsets: Vec<Vec<usize>> = (0..=n)
        .map(|k| crate::delta::facial_piece_offsets(&z.row(k), p))
        .collect();
    let col_maps: Vec<Vec<DeltaMap>> = (1..=n)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    let mut rules = Vec::new();
                    for q in 0..=p {
                        for c in 0..z.grid[k][q].size() {
                            rules.push(PieceRule {
                                target_piece: row_offsets[k - 1][q] + z.col_face(k, q, i, c),
                                coord_map: (0..=q).collect(),
                            });
                        }
                    }
                    DeltaMap::from_rules(&row_complexes[k], &row_complexes[k - 1], &rules)
                })
                .collect::<Result<_, _>>()
        })
        .collect::<Result<_, _>>()?;
    let rows_then_cols = Tower::new(row_complexes, col_maps)?;

    // Columns first: stage q carries the realization of column q up to n.
    let col_complexes: Vec<DeltaComplex> = (0..=p)
        .map(|q| DeltaComplex::from_facial(&z.column(q), n))
        .collect::<Result<_, _>>()?;
    let col_offsets: Vec<Vec<usize>> = (0..=p)
        .map(|q| crate::delta::facial_piece_offsets(&z.column(q), n))
        .collect();
    let row_maps: Vec<Vec<DeltaMap>> = (1..=p)
        .map(|q| {
            (0..=q)
                .map(|j| {
                    let mut rules = Vec::new();
                    for k in 0..=n {
                        for c in 0..z.grid[k][q].size() {
                            rules.push(PieceRule {
                                target_piece: col_offsets[q - 1][k] + z.row_faces[k][q - 1][j][c],
                                coord_map: (0..=k).collect(),
                            });
                        }
                    }
                    DeltaMap::from_rules(&col_complexes[q], &col_complexes[q - 1], &rules)
                })
                .collect::<Result<_, _>>()
        })
        .collect::<Result<_, _>>()?;
    let cols_then_rows = Tower::new(col_complexes, row_maps)?;

    // The bijection (z; q, k) -> (-1)^{qk} (z; k, q).
    let top = rows_then_cols.complex.top().max(cols_then_rows.complex.top());
    let mut degrees = Vec::new();
    for total in 0..=top {
        degrees.push(IntMat::zeros(
            cols_then_rows.complex.rank(total),
            rows_then_cols.complex.rank(total),
        ));
    }
    for k in 0..=n {
        for q in 0..=p {
            for c in 0..z.grid[k][q].size() {
                let (total, col) = rows_then_cols.generator(k, q, c);
                let (tt, row) = cols_then_rows.generator(q, k, c);
                debug_assert_eq!(total, tt);
                let sign = if (q * k) % 2 == 0 {
                    BigInt::from(1)
                } else {
                    BigInt::from(-1)
                };
                degrees[total].set(row, col, sign);
            }
        }
    }
    let bijection = ChainMap { degrees };
    bijection
        .validate(&rows_then_cols.complex, &cols_then_rows.complex)
        .map_err(|e| {
            StructureError::new(format!("signed cell bijection fails to commute: {e}"))
        })?;
    Ok(OrderComparison {
        rows_then_cols,
        cols_then_rows,
        bijection,
    })
}

/// `π̄` and `ε ∘ ψ̄` agree on chains, `π̄` induces isomorphisms on homology,
/// and therefore the section property holds on homology.
pub struct LibmanOutcome {
    pub chain_equality: bool,
    pub pi_bar_iso: bool,
    pub pi_iso: bool,
    pub eta_iso: bool,
    pub zeta_iso: bool,
    pub pi_eta_is_identity: bool,
    pub pi_bar_factors: bool,
}

pub fn libman_outcome(t: &SectionTowers, n: usize) -> LibmanOutcome {
    let c = &t.comparison;
    let eps_psi = t
        .epsilon
        .compose(&t.psi_bar, &c.j.complex, &t.l.complex, &c.t.complex);
    let chain_equality = eps_psi.equals(&c.pi_bar, &c.j.complex, &c.t.complex);
    let check_iso = |f: &ChainMap, src: &Tower, dst: &Tower| -> bool {
        (0..=n).all(|deg| induced_map(f, &src.complex, &dst.complex, deg).is_isomorphism())
    };
    let pi_bar_iso = check_iso(&c.pi_bar, &c.j, &c.t);
    let pi_iso = check_iso(&c.pi, &c.i, &c.t);
    let eta_iso = check_iso(&c.eta, &c.t, &c.i);
    let zeta_iso = check_iso(&c.zeta, &c.j, &c.i);
    let pi_eta = c.pi.compose(&c.eta, &c.t.complex, &c.i.complex, &c.t.complex);
    let pi_eta_is_identity = pi_eta.equals(&ChainMap::identity(&c.t.complex), &c.t.complex, &c.t.complex);
    let pi_zeta = c.pi.compose(&c.zeta, &c.j.complex, &c.i.complex, &c.t.complex);
    let pi_bar_factors = pi_zeta.equals(&c.pi_bar, &c.j.complex, &c.t.complex);
    LibmanOutcome {
        chain_equality,
        pi_bar_iso,
        pi_iso,
        eta_iso,
        zeta_iso,
        pi_eta_is_identity,
        pi_bar_factors,
    }
}

// ---------------------------------------------------------------------------
// The one-truncated section lemma.
// ---------------------------------------------------------------------------

/// A map of 1-truncated facial resolutions: components at the target level
/// and at levels 0 and 1, commuting with faces and augmentations.
#[derive(Debug, Clone)]
pub struct ResolutionMap {
    pub target_level: Vec<usize>,
    pub levels: Vec<Vec<usize>>,
}

impl ResolutionMap {
    pub fn validate(&self, src: &FacialSet, dst: &FacialSet) -> Result<(), StructureError> {
        if self.levels.len() != 2 || src.n_levels() < 2 || dst.n_levels() < 2 {
            return Err(StructureError::new("resolution maps here are 1-truncated"));
        }
        let (sa, da) = (
            src.augmentation()
                .ok_or_else(|| StructureError::new("source not augmented"))?,
            dst.augmentation()
                .ok_or_else(|| StructureError::new("target not augmented"))?,
        );
        for (k, map) in self.levels.iter().enumerate() {
            if map.len() != src.level(k).size() {
                return Err(StructureError::new(format!("map not total at level {k}")));
            }
            if map.iter().any(|&c| c >= dst.level(k).size()) {
                return Err(StructureError::new(format!("map out of range at level {k}")));
            }
        }
        for cell in 0..src.level(1).size() {
            for i in 0..=1usize {
                if self.levels[0][src.face(1, i, cell)] != dst.face(1, i, self.levels[1][cell]) {
                    return Err(StructureError::new(format!(
                        "map fails d_{i} at level 1 on {}",
                        src.level(1).name(cell)
                    )));
                }
            }
        }
        for cell in 0..src.level(0).size() {
            if self.target_level[sa.map[cell]] != da.map[self.levels[0][cell]] {
                return Err(StructureError::new(format!(
                    "map fails the augmentation square on {}",
                    src.level(0).name(cell)
                )));
            }
        }
        Ok(())
    }
}

/// Three 1-truncated contracted facial resolutions with vertical facial
/// maps `α: B -> A` and `β: B -> C`.
#[derive(Debug, Clone)]
pub struct PetitDiagram {
    pub a: FacialSet,
    pub b: FacialSet,
    pub c: FacialSet,
    pub alpha: ResolutionMap,
    pub beta: ResolutionMap,
}

/// One verified step of the section computation for a single input.
#[derive(Debug, Clone, serde::Serialize)]
pub struct PetitStep {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct PetitOutcome {
    pub steps: Vec<PetitStep>,
    /// The level -1 reading of the second composite type-checks; the
    /// level +1 reading does not.
    pub reading_minus_one_well_typed: bool,
    pub reading_plus_one_well_typed: bool,
}

impl PetitOutcome {
    pub fn all_hold(&self) -> bool {
        self.steps.iter().all(|s| s.holds)
    }
}

/// Verify the computation chains behind the 1-truncated section lemma, for
/// one vertical map (`vert: B -> UP`). The two endpoint points share the
/// cell `s_UP(vert_0(s_B b))` with coordinates `(0,1)` and `(1,0)`, which is
/// what joins them within a single 1-cell of the realization.
pub fn petit_side(
    up: &FacialSet,
    b: &FacialSet,
    vert: &ResolutionMap,
) -> Result<PetitOutcome, StructureError> {
    vert.validate(b, up)?;
    for f in [up, b] {
        let r = f.validate_all();
        if !r.is_valid() {
            return Err(StructureError::new(format!(
                "row fails its identities: {}",
                r.violations[0].law
            )));
        }
        if !f.has_contraction() {
            return Err(StructureError::new("rows need contractions"));
        }
    }
    let mut steps = Vec::new();
    let b_target = &b.augmentation().unwrap().target;
    let mut push = |name: &str, holds: bool, detail: String| {
        steps.push(PetitStep {
            name: name.into(),
            holds,
            detail,
        });
    };
    for x in 0..b_target.size() {
        let bname = b_target.name(x);
        // g(b) = [s_B s_B b, 0, 1]; its image under the realized vertical map
        // has cell vert_1(s_B s_B b).
        let sbb = b.s(1, b.s(0, x));
        let e0 = vert.levels[1][sbb];
        // Step: d_0 e0 = vert_0(d_0 s_B s_B b) = vert_0(s_B b).
        let lhs = up.face(1, 0, e0);
        let rhs = vert.levels[0][b.s(0, x)];
        push(
            "d_0 vert_1 s_B s_B = vert_0 s_B",
            lhs == rhs,
            format!("b = {bname}"),
        );
        // The k = 0 quotient move identifies [e0, 0, 1] with [s_A d_0 e0, 0, 1].
        let q = up.s(1, rhs);
        let p1 = RealPoint::new(1, e0, vec![BigRational::zero(), BigRational::one()])
            .and_then(|p| p.canonicalize(up))
            .map_err(|e| StructureError::new(e.to_string()))?;
        let p2 = RealPoint::new(1, q, vec![BigRational::zero(), BigRational::one()])
            .and_then(|p| p.canonicalize(up))
            .map_err(|e| StructureError::new(e.to_string()))?;
        push(
            "realized map image reduces to [s_A vert_0 s_B b, 0, 1]",
            p1 == p2,
            format!("b = {bname}"),
        );
        // f(vert_{-1} b) = [s_A s_A vert_{-1} b, 0, 1]; first rewrite the
        // argument through the augmentation square.
        let v_minus1 = vert.target_level[x];
        let arg_eq = {
            let via_aug = up.augment_cell(vert.levels[0][b.s(0, x)]);
            v_minus1 == via_aug
        };
        push(
            "vert_{-1} b = aug vert_0 s_B b",
            arg_eq,
            format!("b = {bname}"),
        );
        let f0 = up.s(1, up.s(0, v_minus1));
        // s_A s_A d_0 y = s_A d_1 s_A y for y = vert_0(s_B b).
        let y = vert.levels[0][b.s(0, x)];
        let f1 = up.s(1, up.face(1, 1, up.s(1, y)));
        push(
            "s_A s_A aug = s_A d_1 s_A",
            f0 == f1,
            format!("b = {bname}"),
        );
        // [s_A d_1 (s_A y), 0, 1] = [s_A y, 1, 0] by the t_1 = 0 move.
        let lhs_pt = RealPoint::new(1, f1, vec![BigRational::zero(), BigRational::one()])
            .and_then(|p| p.canonicalize(up))
            .map_err(|e| StructureError::new(e.to_string()))?;
        let rhs_pt = RealPoint::new(1, up.s(1, y), vec![BigRational::one(), BigRational::zero()])
            .and_then(|p| p.canonicalize(up))
            .map_err(|e| StructureError::new(e.to_string()))?;
        push(
            "[s_A d_1 s_A y, 0, 1] = [s_A y, 1, 0]",
            lhs_pt == rhs_pt,
            format!("b = {bname}"),
        );
        // The two endpoints share the cell s_A vert_0 s_B b.
        push(
            "endpoints share one 1-cell with coordinates (0,1) and (1,0)",
            q == up.s(1, y),
            format!("cell = {}", up.level(1).name(q)),
        );
        // A basepoint input collapses both endpoints to the basepoint.
        if x == b_target.basepoint() {
            let c1 = p1
                .pointed_collapse(up)
                .map_err(|e| StructureError::new(e.to_string()))?;
            let c2 = rhs_pt
                .pointed_collapse(up)
                .map_err(|e| StructureError::new(e.to_string()))?;
            push(
                "basepoint input gives the basepoint",
                matches!(c1, crate::points::PointedPoint::Basepoint)
                    && matches!(c2, crate::points::PointedPoint::Basepoint),
                format!("b = {bname}"),
            );
        }
    }
    Ok(PetitOutcome {
        steps,
        reading_minus_one_well_typed: true,
        // The printed `vert_1` reading asks for a level-1 input where only a
        // level-(-1) element is available.
        reading_plus_one_well_typed: false,
    })
}

/// Both sides of the diagram.
pub fn petitlibman_check(d: &PetitDiagram) -> Result<(PetitOutcome, PetitOutcome), StructureError> {
    let up = petit_side(&d.a, &d.b, &d.alpha)?;
    let down = petit_side(&d.c, &d.b, &d.beta)?;
    Ok((up, down))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::facial::{FacialSet, Level};
    use crate::ratio::{rat, rat_int};

    /// A small facial set: the boundary of a triangle plus a basepoint chain.
    fn triangle() -> FacialSet {
        let l0 = Level::new(
            vec!["*".into(), "v0".into(), "v1".into(), "v2".into()],
            "*",
        )
        .unwrap();
        let l1 = Level::new(
            vec!["*".into(), "e01".into(), "e02".into(), "e12".into()],
            "*",
        )
        .unwrap();
        let l2 = Level::new(vec!["*".into()], "*").unwrap();
        // d_0 deletes the first listed vertex (keeps the later one).
        let faces1 = vec![vec![0, 2, 3, 3], vec![0, 1, 1, 2]];
        let faces2 = vec![vec![0], vec![0], vec![0]];
        FacialSet::new(vec![l0, l1, l2], vec![faces1, faces2], None, None).unwrap()
    }

    #[test]
    fn rule_a_drops_the_last_operator() {
        let y = triangle();
        // (d1, e12, (1, 0)) at level 0 -> (d1 e12, (1)).
        let p = OpPoint::new(Kind::J, &y, 2, 0, vec![1], 3, vec![rat_int(1), rat_int(0)]).unwrap();
        let c = p.canonicalize(&y);
        assert!(c.word.is_empty());
        assert_eq!(c.cell, y.face(1, 1, 3));
        assert_eq!(c.coords, vec![rat_int(1)]);
        // The word bound i_j <= k + j is enforced.
        assert!(OpPoint::new(Kind::J, &y, 2, 0, vec![2], 3, vec![rat_int(1), rat_int(0)]).is_err());
    }

    #[test]
    fn rule_b_swaps_ascending_pairs() {
        let y = triangle();
        // (d1 d2, cell, (t0, 0, t2)): pair (1, 2) with the paired coordinate
        // zero rewrites to (d1, d1) = (2-1, 1).
        let p = OpPoint::new(
            Kind::J,
            &y,
            2,
            0,
            vec![1, 2],
            0,
            vec![rat(1, 2), rat_int(0), rat(1, 2)],
        )
        .unwrap();
        let c = p.canonicalize(&y);
        assert_eq!(c.word, vec![1, 1]);
        assert_eq!(c.coords, p.coords);
        // With the zero in slot 0 instead, no rule applies.
        let q = OpPoint::new(
            Kind::J,
            &y,
            2,
            0,
            vec![1, 2],
            0,
            vec![rat_int(0), rat(1, 2), rat(1, 2)],
        )
        .unwrap();
        assert_eq!(q.canonicalize(&y), q);
    }

    #[test]
    fn face_identities_on_points() {
        let y = triangle();
        let p = OpPoint::new(
            Kind::J,
            &y,
            2,
            2,
            vec![],
            0,
            vec![rat_int(1)],
        )
        .unwrap();
        for j in 1..=2usize {
            for i in 0..j {
                let lhs = p.face(&y, 2, j).unwrap().face(&y, 2, i).unwrap();
                let rhs = p.face(&y, 2, i).unwrap().face(&y, 2, j - 1).unwrap();
                assert_eq!(lhs, rhs, "Jd_{i} Jd_{j}");
            }
        }
        let q = OpPoint::new(
            Kind::I,
            &y,
            2,
            2,
            vec![],
            0,
            vec![rat(1, 3), rat(2, 3)],
        )
        .unwrap();
        for j in 1..=2usize {
            for i in 0..j {
                let lhs = q.face(&y, 2, j).unwrap().face(&y, 2, i).unwrap();
                let rhs = q.face(&y, 2, i).unwrap().face(&y, 2, j - 1).unwrap();
                assert_eq!(lhs, rhs, "Id_{i} Id_{j}");
            }
        }
    }

    #[test]
    fn section_and_homotopy_identities() {
        let y = triangle();
        let n = 2;
        for k in 0..=n {
            for cell in 0..y.level(k).size() {
                let e = eta(&y, n, k, cell).unwrap();
                assert_eq!(pi(&y, &e).unwrap(), cell);
                let f = phi(&y, n, k, cell).unwrap();
                assert_eq!(pi_bar(&y, &f).unwrap(), cell);
            }
        }
        // Homotopy endpoints on an I point with a word.
        let q = OpPoint::new(
            Kind::I,
            &y,
            2,
            0,
            vec![1],
            2,
            vec![rat(1, 4), rat(1, 4), rat(1, 2)],
        )
        .unwrap();
        let h0 = q.homotopy(&y, &rat_int(0)).unwrap();
        assert_eq!(h0, q.canonicalize(&y));
        let h1 = q.homotopy(&y, &rat_int(1)).unwrap();
        let expected = eta(&y, 2, 0, pi(&y, &q).unwrap()).unwrap().canonicalize(&y);
        assert_eq!(h1, expected);
    }

    #[test]
    fn zeta_matches_displayed_formula() {
        let y = triangle();
        let p = OpPoint::new(
            Kind::J,
            &y,
            2,
            0,
            vec![1],
            2,
            vec![rat(1, 3), rat(2, 3)],
        )
        .unwrap();
        let z = zeta(&y, 2, &p).unwrap();
        assert_eq!(z.word, vec![1]);
        assert_eq!(z.coords, vec![rat_int(0), rat(1, 3), rat(2, 3)]);
    }

    #[test]
    fn phi_is_not_facial_here() {
        let y = triangle();
        assert!(phi_facial_violation(&y, 2).is_some());
    }

    #[test]
    fn towers_compare_and_cone_homotopy_works() {
        use crate::chains::verify_chain_homotopy;
        let y = triangle();
        let n = 2;
        let c = comparison_towers(&y, n).unwrap();
        let out_t = c.t.complex.homology().unwrap();
        let out_j = c.j.complex.homology().unwrap();
        let out_i = c.i.complex.homology().unwrap();
        for deg in 0..=n + 1 {
            assert_eq!(out_t.group(deg), out_j.group(deg), "J degree {deg}");
            assert_eq!(out_t.group(deg), out_i.group(deg), "I degree {deg}");
        }
        for deg in 0..=n {
            assert!(induced_map(&c.pi_bar, &c.j.complex, &c.t.complex, deg).is_isomorphism());
            assert!(induced_map(&c.pi, &c.i.complex, &c.t.complex, deg).is_isomorphism());
            assert!(induced_map(&c.eta, &c.t.complex, &c.i.complex, deg).is_isomorphism());
            assert!(induced_map(&c.zeta, &c.j.complex, &c.i.complex, deg).is_isomorphism());
        }
        // Levelwise: id ≃ η π via the coning prism on each I level.
        for k in 0..=n {
            let lvl = &c.i_levels[k];
            let cc = lvl.complex.chain_complex().unwrap();
            let id = ChainMap::identity(&cc);
            // η π on the level complex.
            let rules: Vec<PieceRule> = lvl
                .pieces
                .iter()
                .map(|(w, cidx)| {
                    let mut cell = *cidx;
                    for (j, &i) in w.iter().enumerate().rev() {
                        cell = y.face(k + j + 1, i, cell);
                    }
                    PieceRule {
                        target_piece: lvl.piece(&[], cell).unwrap(),
                        coord_map: vec![0; lvl.kind.coord_len(w.len())],
                    }
                })
                .collect();
            let eta_pi = DeltaMap::from_rules(&lvl.complex, &lvl.complex, &rules)
                .unwrap()
                .chain_map(&lvl.complex, &lvl.complex);
            let h = cone_homotopy(lvl);
            assert!(verify_chain_homotopy(&id, &eta_pi, &h, &cc, &cc).unwrap());
            // Perturbing the prism must break it (negative control).
            if h[0].rows() > 0 && h[0].cols() > 0 {
                let mut bad = h.clone();
                let v = bad[0].get(0, 0).clone();
                bad[0].set(0, 0, v + num::BigInt::from(1));
                assert!(!verify_chain_homotopy(&id, &eta_pi, &bad, &cc, &cc).unwrap());
            }
        }
    }
}
