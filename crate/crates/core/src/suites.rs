//! Named check suites shared by the command line, the acceptance gate and
//! the language bindings. Every suite returns a deterministic `Report`;
//! mathematical failures become failed checks with witnesses, never panics.

use num::rational::BigRational;
use num::{One, Zero};
use rand::Rng;

use crate::bar::{bar_facial, milnor_stage, BarVariant};
use crate::bifacial::BifacialSet;
use crate::chains::{fat_chains, induced_map, pointed_chains, ChainComplex, HomologyGroup};
use crate::cotriple::{check_comonad_instance, lambda_resolution, Comonad};
use crate::error::StructureError;
use crate::facial::{tuple_name, tuple_of_ordinal, FacialSet, Level, ordinal_of_tuple};
use crate::gen;
use crate::matrix::IntMat;
use crate::monoid::FiniteMonoid;
use crate::moore::{bar_identities_on_loops, gamma, MooreLoop};
use crate::points::{section_sigma, PointedPoint, RealPoint};
use crate::rectify::{
    self, bifacial_compare, comparison_towers, libman_outcome, petitlibman_check, phi,
    phi_facial_violation, pi, pi_bar, psi_bar_point, psi_point, section_towers, zeta, Kind,
    OpPoint,
};
use crate::report::Report;
use crate::simplicial::{hopf_chain_map, SimplicialComplex};

// ---------------------------------------------------------------------------
// One-shot reports.
// ---------------------------------------------------------------------------

pub fn validate_report(f: &FacialSet) -> Report {
    let mut r = Report::new("validate");
    let faces = f.validate_faces();
    r.check(
        "facial identities",
        faces.is_valid(),
        faces.violations.first().map(|v| format!("{v:?}")),
    );
    if f.has_augmentation() {
        let aug = f.validate_augmentation();
        r.check(
            "augmentation compatibility",
            aug.is_valid(),
            aug.violations.first().map(|v| format!("{v:?}")),
        );
    }
    if f.has_contraction() {
        let con = f.validate_contraction();
        r.check(
            "contraction identities",
            con.is_valid(),
            con.violations.first().map(|v| format!("{v:?}")),
        );
    }
    r
}

pub fn homology_report(f: &FacialSet, n: usize, pointed: bool) -> Result<Report, StructureError> {
    let mut r = Report::new("homology");
    r.param("n", n).param("pointed", pointed);
    if pointed {
        let (c, _) = pointed_chains(f, n)?;
        r.homology_table(format!("pointed realization, stage {n}"), &c.homology()?);
    } else {
        let c = fat_chains(f, n)?;
        r.homology_table(format!("free realization, stage {n}"), &c.homology()?);
    }
    Ok(r)
}

pub fn bar_report(m: &FiniteMonoid, variant: BarVariant, n: usize) -> Result<Report, StructureError> {
    let f = bar_facial(m, variant, n)?;
    let mut r = Report::new("bar");
    r.param("variant", format!("{variant:?}"));
    r.param("levels", n);
    r.table(
        "level sizes",
        (0..=n)
            .map(|k| (format!("level {k}"), f.level(k).size().to_string()))
            .collect(),
    );
    r.merge(validate_report(&f));
    Ok(r)
}

pub fn milnor_report(m: &FiniteMonoid, n: usize, budget: usize) -> Result<Report, StructureError> {
    let stage = milnor_stage(m, n, budget)?;
    let mut r = Report::new("milnor");
    r.param("n", n);
    r.table(
        "cells",
        (0..stage.e.cells.len())
            .map(|d| {
                (
                    format!("dim {d}"),
                    format!("E: {}  B: {}", stage.e.cells[d].len(), stage.b.cells[d].len()),
                )
            })
            .collect(),
    );
    let he = stage.e.chain_complex().homology()?;
    let hb = stage.b.chain_complex().homology()?;
    r.homology_table(format!("E_{n}"), &he);
    r.homology_table(format!("B_{n}"), &hb);
    for d in 0..stage.e.cells.len() {
        r.check(
            format!("free action: |B_{n}| cells x |M| = |E_{n}| cells in dim {d}"),
            stage.e.cells[d].len() == m.size() * stage.b.cells[d].len(),
            None,
        );
    }
    Ok(r)
}

pub fn join_report(m: &FiniteMonoid, copies: usize) -> Result<Report, StructureError> {
    let disc = SimplicialComplex::discrete(&m.names);
    let join = disc.join_power(copies);
    let h = join.chain_complex()?.homology()?;
    let mut r = Report::new("join");
    r.param("copies", copies);
    r.param("monoid size", m.size());
    r.homology_table(format!("{copies}-fold join"), &h);
    let top = copies - 1;
    for k in 0..top {
        r.check(
            format!("reduced homology vanishes in degree {k}"),
            h.reduced(k).is_trivial(),
            Some(h.reduced(k).to_string()),
        );
    }
    let expected = (m.size() - 1).pow(copies as u32);
    r.check(
        format!("top homology is free of rank (|M|-1)^{copies}"),
        h.group(top) == HomologyGroup::free(expected),
        Some(format!("got {}", h.group(top))),
    );
    // Independent count: reduced Euler characteristic.
    let mut chi: i64 = 0;
    for d in 0..=join.dim() {
        let c = join.count(d) as i64;
        chi += if d % 2 == 0 { c } else { -c };
    }
    let chi_reduced = chi - 1;
    let from_euler = if top % 2 == 0 { chi_reduced } else { -chi_reduced };
    r.check(
        "rank agrees with the reduced Euler characteristic",
        from_euler == expected as i64,
        Some(format!("Euler gives {from_euler}")),
    );
    Ok(r)
}

pub fn hopf_report(m: &FiniteMonoid) -> Result<Report, StructureError> {
    let data = hopf_chain_map(m)?;
    let mut r = Report::new("hopf");
    r.param("group size", m.size());
    r.check(
        "chain map commutes with boundaries",
        data.map.validate(&data.join_chains, &data.wedge).is_ok(),
        None,
    );
    // Fundamental cycles of the complete bipartite join graph: chords of the
    // double-star spanning tree. Their images are computed two ways: through
    // the cycle-basis presentation of H_1 and directly edge by edge.
    let size = m.size();
    let edge_index = |a: usize, b: usize| a * size + b;
    let ps = crate::chains::DegreePresentation::new(&data.join_chains, 1);
    let pd = crate::chains::DegreePresentation::new(&data.wedge, 1);
    let mut rows = Vec::new();
    for a in 1..size {
        for b in 1..size {
            let mut z = IntMat::zeros(data.join_chains.rank(1), 1);
            z.set(edge_index(a, b), 0, 1.into());
            z.set(edge_index(0, b), 0, (-1).into());
            z.set(edge_index(0, 0), 0, 1.into());
            z.set(edge_index(a, 0), 0, (-1).into());
            let direct = data.map.degrees[1].mul(&z);
            let via_presentation = pd.cycles.mul(&pd.coordinates(
                &data.map.degrees[1].mul(&ps.cycles.mul(&ps.coordinates(&z))),
            ));
            r.check(
                format!("H_1 image of the ({a},{b}) fundamental cycle matches brute force"),
                direct == via_presentation,
                None,
            );
            let img: Vec<String> = (0..data.wedge.rank(1))
                .map(|i| direct.get(i, 0).to_string())
                .collect();
            rows.push((
                format!("cycle ({},{}')", m.names[a], m.names[b]),
                format!("[{}]", img.join(", ")),
            ));
        }
    }
    r.table("induced map on H_1 (wedge coordinates)", rows);
    Ok(r)
}

// ---------------------------------------------------------------------------
// Randomized identity suites.
// ---------------------------------------------------------------------------

/// Appendix identity suite: J/I normal forms, facial identities of the
/// prepended faces, the comparison morphisms and homotopies, and the
/// homological equivalence of all four comparison maps.
pub fn rectify_suite(seed: u64, count: usize, max_n: usize) -> Report {
    let mut rng = gen::rng_from_seed(seed);
    let mut r = Report::new("rectify");
    r.param("seed", seed).param("count", count).param("max_n", max_n);
    let mut confluence_states = 0usize;
    for inst in 0..count {
        let n = rng.gen_range(1..=max_n);
        let y = gen::rand_facial_set(&mut rng, n + 1, 3, 2);
        let tag = format!("#{inst} (n={n})");
        if !y.validate_faces().is_valid() {
            r.check(format!("{tag}: generated facial set valid"), false, None);
            continue;
        }
        let mut all = |name: &str, ok: bool, witness: Option<String>| {
            r.check(format!("{tag}: {name}"), ok, witness);
        };
        // π∘η = id and π̄∘φ = id on every cell of every level.
        let mut pi_eta = true;
        let mut pibar_phi = true;
        for k in 0..=n {
            for cell in 0..y.level(k).size() {
                let e = rectify::eta(&y, n, k, cell).expect("eta");
                pi_eta &= pi(&y, &e).unwrap() == cell;
                let f = phi(&y, n, k, cell).expect("phi");
                pibar_phi &= pi_bar(&y, &f).unwrap() == cell;
            }
        }
        all("π∘η = id on all cells", pi_eta, None);
        all("π̄∘φ = id on all cells", pibar_phi, None);
        // Random points at each level with a few vanishing coordinates.
        let mut facial_j = true;
        let mut facial_i = true;
        let mut endpoints = true;
        let mut idempotent = true;
        let mut confluent = true;
        let mut eta_zeta_facial = true;
        for _ in 0..6 {
            let k = rng.gen_range(0..=n);
            let m = rng.gen_range(0..=n - k);
            let word: Vec<usize> = (0..m).map(|j| rng.gen_range(0..=k + j + 1)).collect();
            let cell = rng.gen_range(0..y.level(k + m).size());
            let zeros = rng.gen_range(0..=m.min(2));
            let jc = gen::rand_barycentric(&mut rng, m + 1, zeros);
            let i_zeros = rng.gen_range(0..=(m + 1).min(2));
            let ic = gen::rand_barycentric(&mut rng, m + 2, i_zeros);
            let pj = OpPoint::new(Kind::J, &y, n, k, word.clone(), cell, jc).expect("J point");
            let pi_pt = OpPoint::new(Kind::I, &y, n, k, word.clone(), cell, ic).expect("I point");
            if k >= 2 {
                for j in 1..=k {
                    for i in 0..j {
                        let lhs = pj.face(&y, n, j).unwrap().face(&y, n, i).unwrap();
                        let rhs = pj.face(&y, n, i).unwrap().face(&y, n, j - 1).unwrap();
                        facial_j &= lhs == rhs;
                        let lhs = pi_pt.face(&y, n, j).unwrap().face(&y, n, i).unwrap();
                        let rhs = pi_pt.face(&y, n, i).unwrap().face(&y, n, j - 1).unwrap();
                        facial_i &= lhs == rhs;
                    }
                }
            }
            // Homotopy endpoints.
            let h0 = pi_pt.homotopy(&y, &BigRational::zero()).unwrap();
            endpoints &= h0 == pi_pt.canonicalize(&y);
            let h1 = pi_pt.homotopy(&y, &BigRational::one()).unwrap();
            let target = rectify::eta(&y, n, k, pi(&y, &pi_pt).unwrap())
                .unwrap()
                .canonicalize(&y);
            endpoints &= h1 == target;
            let hb0 = pj.homotopy(&y, &BigRational::zero()).unwrap();
            endpoints &= hb0 == pj.canonicalize(&y);
            let hb1 = pj.homotopy(&y, &BigRational::one()).unwrap();
            let target = phi(&y, n, k, pi_bar(&y, &pj).unwrap())
                .unwrap()
                .canonicalize(&y);
            endpoints &= hb1 == target;
            // Normal forms: idempotent and order-independent.
            let cj = pj.canonicalize(&y);
            idempotent &= cj.canonicalize(&y) == cj;
            let ci = pi_pt.canonicalize(&y);
            idempotent &= ci.canonicalize(&y) == ci;
            for p in [&pj, &pi_pt] {
                let nfs = p.normal_forms_all_orders(&y, 4000);
                confluence_states += nfs.len();
                confluent &= nfs.len() == 1
                    && nfs.into_iter().next().unwrap() == p.canonicalize(&y);
            }
            // η and ζ commute with the faces (facial maps), pointwise.
            if k >= 1 {
                for i in 0..=k {
                    let via_eta = rectify::eta(&y, n, k, y.level(k).basepoint())
                        .map(|_| ())
                        .is_ok();
                    let _ = via_eta;
                    let e = rectify::eta(&y, n, k, cell_at(&y, k, &mut rng)).unwrap();
                    let lhs = e.face(&y, n, i).unwrap();
                    let c0 = match e.word.len() {
                        0 => e.cell,
                        _ => unreachable!(),
                    };
                    let rhs = rectify::eta(&y, n, k - 1, y.face(k, i, c0))
                        .unwrap()
                        .canonicalize(&y);
                    eta_zeta_facial &= lhs == rhs;
                    let zp = zeta(&y, n, &pj).unwrap();
                    let lhs = zp.face(&y, n, i).unwrap();
                    let rhs = zeta(&y, n, &pj.face(&y, n, i).unwrap()).unwrap();
                    eta_zeta_facial &= lhs == rhs;
                }
            }
        }
        all("Jd facial identities", facial_j, None);
        all("Id facial identities", facial_i, None);
        all("H and H̄ endpoint identities", endpoints, None);
        all("normal forms idempotent", idempotent, None);
        all("rewrite-order confluence", confluent, None);
        all("η and ζ are facial pointwise", eta_zeta_facial, None);
        // φ genuinely fails to be facial when there is anything to move.
        if (1..=n).any(|k| y.level(k).size() > 1) {
            all(
                "φ is not facial (violation witnessed)",
                phi_facial_violation(&y, n).is_some(),
                None,
            );
        }
        // The four comparison maps are homology isomorphisms.
        match comparison_towers(&y, n) {
            Ok(c) => {
                let mut iso = true;
                for deg in 0..=n {
                    iso &= induced_map(&c.pi_bar, &c.j.complex, &c.t.complex, deg).is_isomorphism();
                    iso &= induced_map(&c.pi, &c.i.complex, &c.t.complex, deg).is_isomorphism();
                    iso &= induced_map(&c.eta, &c.t.complex, &c.i.complex, deg).is_isomorphism();
                    iso &= induced_map(&c.zeta, &c.j.complex, &c.i.complex, deg).is_isomorphism();
                }
                all("η, ζ, π, π̄ induce homology isomorphisms", iso, None);
            }
            Err(e) => all("comparison towers build", false, Some(e.to_string())),
        }
    }
    r.param("confluence states explored", confluence_states);
    r
}

fn cell_at(y: &FacialSet, k: usize, rng: &mut rand_chacha::ChaCha8Rng) -> usize {
    rng.gen_range(0..y.level(k).size())
}

/// Contracted-realization point suite: the section, the contraction
/// homotopy endpoints, augmentation invariance, and the pointed collapse.
pub fn point_suite(seed: u64, count: usize, max_levels: usize) -> Report {
    let mut rng = gen::rng_from_seed(seed);
    let mut r = Report::new("points");
    r.param("seed", seed).param("count", count);
    for inst in 0..count {
        let n = rng.gen_range(1..=max_levels);
        let f = gen::rand_contracted_resolution(&mut rng, n);
        let tag = format!("#{inst} (top={n})");
        if !f.validate_all().is_valid() {
            r.check(format!("{tag}: instance valid"), false, None);
            continue;
        }
        let target = f.augmentation().unwrap().target.clone();
        let mut section_ok = true;
        for stage in 0..=n {
            for x in 0..target.size() {
                let p = section_sigma(&f, x, stage).expect("section");
                section_ok &= p.augment(&f).unwrap() == x;
            }
        }
        r.check(format!("{tag}: ε∘σ_n = id for all inputs"), section_ok, None);
        let mut endpoints = true;
        let mut collapse = true;
        let mut invariance = true;
        let mut confluent = true;
        let mut inclusion2 = true;
        for _ in 0..8 {
            let stage = rng.gen_range(0..n);
            let cell = rng.gen_range(0..f.level(stage).size());
            let zeros = rng.gen_range(0..=stage.min(2));
            let coords = gen::rand_barycentric(&mut rng, stage + 1, zeros);
            let p = RealPoint::new(stage, cell, coords).expect("point");
            let h0 = p.homotopy(&f, &BigRational::zero()).unwrap();
            endpoints &= h0 == p.include_up(&f).unwrap();
            let h1 = p.homotopy(&f, &BigRational::one()).unwrap();
            endpoints &= h1 == section_sigma(&f, p.augment(&f).unwrap(), stage + 1).unwrap();
            // Augmentation is representative-independent and commutes with
            // the pointed collapse.
            let c = p.canonicalize(&f).unwrap();
            invariance &= p.augment(&f).unwrap() == c.augment(&f).unwrap();
            let collapsed = p.pointed_collapse(&f).unwrap();
            collapse &= collapsed.augment(&f).unwrap() == p.augment(&f).unwrap();
            if let PointedPoint::Cell(q) = &collapsed {
                collapse &= q.cell != f.level(q.level).basepoint();
            }
            confluent &= {
                let nfs = p.normal_forms_all_orders(&f, 4000).unwrap();
                nfs.len() == 1 && nfs.into_iter().next().unwrap() == c
            };
            if stage + 2 <= n {
                // Twice-included points match the two-step formula.
                let two = p.include_up(&f).unwrap().include_up(&f).unwrap();
                let ss = f.s(stage + 2, f.s(stage + 1, p.cell));
                let mut coords = vec![BigRational::zero(), BigRational::zero()];
                coords.extend(p.coords.iter().cloned());
                let direct = RealPoint::new(stage + 2, ss, coords)
                    .unwrap()
                    .canonicalize(&f)
                    .unwrap();
                inclusion2 &= two == direct;
            }
        }
        r.check(format!("{tag}: H(·,0) = inclusion, H(·,1) = σ∘ε"), endpoints, None);
        r.check(format!("{tag}: augmentation is representative-independent"), invariance, None);
        r.check(format!("{tag}: free→pointed→augmentation factorization"), collapse, None);
        r.check(format!("{tag}: rewrite-order confluence"), confluent, None);
        r.check(format!("{tag}: iterated inclusion matches s s x"), inclusion2, None);
    }
    r
}

/// The desk-scale section pipeline over random bifacial grids.
pub fn libman_suite(seed: u64, count: usize, max_n: usize) -> Report {
    let mut rng = gen::rng_from_seed(seed);
    let mut r = Report::new("libman");
    r.param("seed", seed).param("count", count).param("max_n", max_n);
    for inst in 0..count {
        let n = rng.gen_range(1..=max_n);
        let z = gen::rand_bifacial(&mut rng, n + 1, n + 1, 3, 2, 1);
        let tag = format!("#{inst} (n={n})");
        run_libman_instance(&mut r, &tag, &z, n, &mut rng);
    }
    // Negative control: a deliberately broken row contraction must be
    // caught by validation.
    let mut z = gen::rand_bifacial(&mut rng, 2, 2, 3, 2, 1);
    if let Some(rc) = z.row_contractions.as_mut() {
        let table = &mut rc[0][0];
        if z.grid[0][0].size() >= 2 {
            table[0] = (table[0] + 1) % z.grid[0][0].size();
        }
        let report = z.validate();
        r.check(
            "negative control: broken contraction is rejected with a witness",
            !report.is_valid() && !report.violations.is_empty(),
            None,
        );
    }
    r
}

pub fn run_libman_instance(
    r: &mut Report,
    tag: &str,
    z: &BifacialSet,
    n: usize,
    rng: &mut rand_chacha::ChaCha8Rng,
) {
    let v = z.validate();
    r.check(format!("{tag}: grid identities"), v.is_valid(), v.violations.first().map(|x| format!("{x:?}")));
    if !v.is_valid() {
        return;
    }
    let towers = match section_towers(z, n) {
        Ok(t) => t,
        Err(e) => {
            r.check(format!("{tag}: towers build"), false, Some(e.to_string()));
            return;
        }
    };
    let outcome = libman_outcome(&towers, n);
    r.check(format!("{tag}: ε∘ψ̄ = π̄ on chains"), outcome.chain_equality, None);
    r.check(format!("{tag}: π̄ homology isomorphism"), outcome.pi_bar_iso, None);
    r.check(format!("{tag}: π, η, ζ homology isomorphisms"), outcome.pi_iso && outcome.eta_iso && outcome.zeta_iso, None);
    r.check(format!("{tag}: π∘η = id on chains"), outcome.pi_eta_is_identity, None);
    r.check(format!("{tag}: π̄ = π∘ζ on chains"), outcome.pi_bar_factors, None);
    r.check(
        format!("{tag}: section on homology: (ε∘ψ̄)_* ∘ (π̄_*)⁻¹ = id"),
        outcome.chain_equality && outcome.pi_bar_iso,
        None,
    );
    // Pointwise identities.
    let y = z.target_column();
    let mut psi_phi = true;
    for k in 0..=n {
        for cell in 0..y.level(k).size() {
            let via_phi = phi(&y, n, k, cell)
                .and_then(|p| psi_bar_point(z, n, k, &p))
                .expect("ψ̄∘φ");
            let direct = psi_point(z, n, k, cell).expect("ψ");
            psi_phi &= via_phi == direct;
        }
    }
    r.check(format!("{tag}: ψ̄∘φ = ψ on all cells"), psi_phi, None);
    let mut eps_psi = true;
    let mut commutes = true;
    for _ in 0..8 {
        let k = rng.gen_range(0..=n);
        let m = rng.gen_range(0..=n - k);
        let word: Vec<usize> = (0..m).map(|j| rng.gen_range(0..=k + j + 1)).collect();
        let cell = rng.gen_range(0..y.level(k + m).size());
        let zeros = rng.gen_range(0..=m.min(2));
        let coords = gen::rand_barycentric(rng, m + 1, zeros);
        let p = OpPoint::new(Kind::J, &y, n, k, word, cell, coords).expect("J point");
        let img = psi_bar_point(z, n, k, &p).expect("ψ̄");
        let eps = crate::rectify::epsilon_cell(z, n, k, img.cell);
        eps_psi &= eps == pi_bar(&y, &p).unwrap();
        if k >= 1 {
            for i in 0..=k {
                // ∂_i ∘ ψ̄ = ψ̄ ∘ Jd_i as points of the row-(k-1) model.
                let lhs = RealPoint::new(n, z.col_face(k, n, i, img.cell), img.coords.clone())
                    .unwrap()
                    .canonicalize(&z.row(k - 1))
                    .expect("column face of ψ̄ image");
                let rhs = psi_bar_point(z, n, k - 1, &p.face(&y, n, i).unwrap()).expect("ψ̄ Jd_i");
                commutes &= lhs == rhs;
            }
        }
    }
    r.check(format!("{tag}: ε_n∘ψ̄ = π̄ pointwise"), eps_psi, None);
    r.check(format!("{tag}: ψ̄ commutes with column faces pointwise"), commutes, None);
}

/// Realization-order comparison over random grids.
pub fn bifacial_compare_suite(seed: u64, count: usize, max_n: usize, max_p: usize) -> Report {
    let mut rng = gen::rng_from_seed(seed);
    let mut r = Report::new("bifacial-compare");
    r.param("seed", seed).param("count", count);
    r.param("max_n", max_n).param("max_p", max_p);
    for inst in 0..count {
        let n = rng.gen_range(0..=max_n);
        let p = rng.gen_range(0..=max_p);
        let z = gen::rand_bifacial(&mut rng, n + 1, p + 1, 3, 2, 1);
        let tag = format!("#{inst} (n={n}, p={p})");
        match bifacial_compare(&z, n, p) {
            Ok(cmp) => {
                r.check(format!("{tag}: signed cell bijection commutes with boundaries"), true, None);
                let ha = cmp.rows_then_cols.complex.homology();
                let hb = cmp.cols_then_rows.complex.homology();
                match (ha, hb) {
                    (Ok(ha), Ok(hb)) => {
                        let top = n + p;
                        let equal = (0..=top).all(|d| ha.group(d) == hb.group(d));
                        r.check(format!("{tag}: homology of both orders equal"), equal, None);
                    }
                    _ => r.check(format!("{tag}: homology computes"), false, None),
                }
            }
            Err(e) => r.check(format!("{tag}: comparison"), false, Some(e.to_string())),
        }
    }
    r
}

/// The 1-truncated section lemma over random diagrams.
pub fn petit_suite(seed: u64, count: usize) -> Report {
    let mut rng = gen::rng_from_seed(seed);
    let mut r = Report::new("petitlibman");
    r.param("seed", seed).param("count", count);
    for inst in 0..count {
        let d = gen::rand_petit_diagram(&mut rng);
        let tag = format!("#{inst}");
        match petitlibman_check(&d) {
            Ok((up, down)) => {
                r.check(format!("{tag}: α-side chain of equalities"), up.all_hold(),
                    up.steps.iter().find(|s| !s.holds).map(|s| format!("{}: {}", s.name, s.detail)));
                r.check(format!("{tag}: β-side chain of equalities"), down.all_hold(),
                    down.steps.iter().find(|s| !s.holds).map(|s| format!("{}: {}", s.name, s.detail)));
                r.check(
                    format!("{tag}: level -1 reading type-checks, level +1 reading does not"),
                    up.reading_minus_one_well_typed && !up.reading_plus_one_well_typed,
                    None,
                );
            }
            Err(e) => r.check(format!("{tag}: diagram"), false, Some(e.to_string())),
        }
    }
    r
}

/// Exhaustive comonad laws and resolution identities; acyclicity of the
/// pointed chains of the resolution of a point below the truncation.
pub fn cotriple_suite(max_x: usize, max_e: usize, max_n: usize, budget: usize) -> Report {
    let mut r = Report::new("cotriple");
    r.param("max_x", max_x).param("max_e", max_e).param("max_n", max_n);
    let pointed = |size: usize, tag: &str| {
        let names: Vec<String> = (0..size)
            .map(|i| if i == 0 { "*".into() } else { format!("{tag}{i}") })
            .collect();
        Level::new(names, "*").unwrap()
    };
    // Identity comonad.
    for xs in 1..=max_x {
        let x = pointed(xs, "x");
        let rep = crate::cotriple::check_comonad(&Comonad::Identity, &x, budget);
        r.check(
            format!("identity comonad laws on |X| = {xs}"),
            rep.as_ref().map(|v| v.is_valid()).unwrap_or(false),
            rep.err().map(|e| e.to_string()),
        );
    }
    for xs in 1..=max_x {
        for es in 1..=max_e {
            let x = pointed(xs, "x");
            let e = pointed(es, "e");
            let t = Comonad::Product { factor: e };
            let rep = crate::cotriple::check_comonad(&t, &x, budget);
            let laws_valid = rep.as_ref().map(|v| v.is_valid()).unwrap_or(false);
            r.check(
                format!("product comonad laws on |X| = {xs}, |E| = {es}"),
                laws_valid,
                rep.err().map(|e| e.to_string()),
            );
            for n in 0..=max_n {
                match lambda_resolution(&t, &x, n, budget) {
                    Ok(f) => {
                        let v = f.validate_all();
                        let laws_ok = laws_valid;
                        r.check(
                            format!("resolution identities |X| = {xs}, |E| = {es}, n = {n}"),
                            v.is_valid(),
                            v.violations.first().map(|w| format!("{w:?}")),
                        );
                        r.check(
                            format!("laws and facial identities agree (|X| = {xs}, |E| = {es}, n = {n})"),
                            laws_ok == v.is_valid(),
                            None,
                        );
                        let mut d0s = true;
                        for k in 0..=n {
                            let src = if k == 0 {
                                f.augmentation().unwrap().target.size()
                            } else {
                                f.level(k - 1).size()
                            };
                            for c in 0..src {
                                let up = f.contraction().unwrap().maps[k][c];
                                let back = if k == 0 {
                                    f.augment_cell(up)
                                } else {
                                    f.face(k, 0, up)
                                };
                                d0s &= back == c;
                            }
                        }
                        r.check(
                            format!("d_0∘s = id on every level (|X| = {xs}, |E| = {es}, n = {n})"),
                            d0s,
                            None,
                        );
                    }
                    Err(err) => r.check(
                        format!("resolution builds |X| = {xs}, |E| = {es}, n = {n}"),
                        false,
                        Some(err.to_string()),
                    ),
                }
            }
        }
    }
    // Negative control: a corrupted comultiplication is caught.
    {
        let x = pointed(2, "x");
        let e = pointed(2, "e");
        let t = Comonad::Product { factor: e };
        let mut inst = t.instance(&x);
        inst.eps_x[1] = (inst.eps_x[1] + 1) % inst.ttx_size();
        let rep = check_comonad_instance(&inst);
        r.check(
            "negative control: corrupted ε reports a witness",
            !rep.is_valid(),
            None,
        );
    }
    // Resolutions of the point have trivial homology below the truncation.
    for es in 1..=max_e {
        let e = pointed(es, "e");
        let t = Comonad::Product { factor: e };
        for n in 1..=max_n {
            match lambda_resolution(&t, &Level::point(), n, budget) {
                Ok(f) => {
                    let fat_ok = fat_chains(&f, n)
                        .and_then(|c| c.homology())
                        .map(|h| (0..n).all(|k| h.reduced(k).is_trivial()))
                        .unwrap_or(false);
                    let pointed_ok = pointed_chains(&f, n)
                        .and_then(|(c, _)| c.homology())
                        .map(|h| (0..n).all(|k| h.group(k).is_trivial()))
                        .unwrap_or(false);
                    r.check(
                        format!("point resolution acyclic below n (fat, |E| = {es}, n = {n})"),
                        fat_ok,
                        None,
                    );
                    r.check(
                        format!("point resolution acyclic below n (pointed, |E| = {es}, n = {n})"),
                        pointed_ok,
                        None,
                    );
                }
                Err(err) => r.check(
                    format!("point resolution builds (|E| = {es}, n = {n})"),
                    false,
                    Some(err.to_string()),
                ),
            }
        }
    }
    r
}

/// The bifacial grid of the bar construction over a product-comonad
/// resolution of monoids: rows are powers of the contracted resolution,
/// columns are bar constructions.
pub fn lambda_bar_grid(
    x: &FiniteMonoid,
    e: &FiniteMonoid,
    n_rows: usize,
    n_cols: usize,
) -> BifacialSet {
    // Column-p monoid: X × E^{p+1}, little-endian digit ordinals.
    let mut monoids = Vec::with_capacity(n_cols);
    let mut cur = x.product(e);
    for _ in 0..n_cols {
        monoids.push(cur.clone());
        cur = cur.product(e);
    }
    let s = e.size();
    let strip = |o: usize, copies: usize, slot: usize| -> usize {
        let y = o / s.pow(copies as u32);
        let mut rest = o % s.pow(copies as u32);
        let mut digits = Vec::with_capacity(copies);
        for _ in 0..copies {
            digits.push(rest % s);
            rest /= s;
        }
        digits.remove(slot);
        let mut acc = 0;
        for (j, &d) in digits.iter().enumerate() {
            acc += d * s.pow(j as u32);
        }
        y * s.pow((copies - 1) as u32) + acc
    };
    let level_of = |m: &FiniteMonoid, k: usize| -> Level {
        let mut names = Vec::with_capacity(m.size().pow(k as u32));
        for o in 0..m.size().pow(k as u32) {
            let t = tuple_of_ordinal(o, m.size(), k);
            names.push(tuple_name(
                &t.iter().map(|&c| m.names[c].as_str()).collect::<Vec<_>>(),
            ));
        }
        let bp = tuple_name(&vec![m.names[m.identity].as_str(); k]);
        Level::new(names, &bp).unwrap()
    };
    let grid: Vec<Vec<Level>> = (0..n_rows)
        .map(|k| (0..n_cols).map(|p| level_of(&monoids[p], k)).collect())
        .collect();
    let row_targets: Vec<Level> = (0..n_rows).map(|k| level_of(x, k)).collect();
    // Row faces: strip a digit in every tuple slot.
    let tuple_map = |m_size: usize, k: usize, f: &dyn Fn(usize) -> usize, out_size: usize| -> Vec<usize> {
        (0..m_size.pow(k as u32))
            .map(|o| {
                let t = tuple_of_ordinal(o, m_size, k);
                let img: Vec<usize> = t.iter().map(|&c| f(c)).collect();
                ordinal_of_tuple(&img, out_size)
            })
            .collect()
    };
    let row_faces: Vec<Vec<Vec<Vec<usize>>>> = (0..n_rows)
        .map(|k| {
            (1..n_cols)
                .map(|p| {
                    (0..=p)
                        .map(|i| {
                            let copies = p + 1;
                            tuple_map(
                                monoids[p].size(),
                                k,
                                &|c| strip(c, copies, i),
                                monoids[p - 1].size(),
                            )
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let row_aug: Vec<Vec<usize>> = (0..n_rows)
        .map(|k| tuple_map(monoids[0].size(), k, &|c| strip(c, 1, 0), x.size()))
        .collect();
    // Column faces: bar faces of the column monoid.
    let bar_face = |m: &FiniteMonoid, k: usize, i: usize| -> Vec<usize> {
        (0..m.size().pow(k as u32))
            .map(|o| {
                let t = tuple_of_ordinal(o, m.size(), k);
                let img: Vec<usize> = if i == 0 {
                    t[1..].to_vec()
                } else if i == k {
                    t[..k - 1].to_vec()
                } else {
                    let mut v = Vec::with_capacity(k - 1);
                    v.extend_from_slice(&t[..i - 1]);
                    v.push(m.mul(t[i - 1], t[i]));
                    v.extend_from_slice(&t[i + 1..]);
                    v
                };
                ordinal_of_tuple(&img, m.size())
            })
            .collect()
    };
    let col_faces: Vec<Vec<Vec<Vec<usize>>>> = (1..n_rows)
        .map(|k| {
            (0..n_cols)
                .map(|p| (0..=k).map(|i| bar_face(&monoids[p], k, i)).collect())
                .collect()
        })
        .collect();
    let col_target_faces: Vec<Vec<Vec<usize>>> = (1..n_rows)
        .map(|k| (0..=k).map(|i| bar_face(x, k, i)).collect())
        .collect();
    // Row contractions: insert the identity of E in digit 0, per slot.
    let insert0 = |o: usize, copies: usize| -> usize {
        let y = o / s.pow(copies as u32);
        let rest = o % s.pow(copies as u32);
        y * s.pow((copies + 1) as u32) + rest * s + e.identity
    };
    let row_contractions: Vec<Vec<Vec<usize>>> = (0..n_rows)
        .map(|k| {
            (0..n_cols)
                .map(|p| {
                    if p == 0 {
                        tuple_map(x.size(), k, &|c| c * s + e.identity, monoids[0].size())
                    } else {
                        tuple_map(
                            monoids[p - 1].size(),
                            k,
                            &|c| insert0(c, p),
                            monoids[p].size(),
                        )
                    }
                })
                .collect()
        })
        .collect();
    let z = BifacialSet {
        row_targets,
        grid,
        row_faces,
        row_aug,
        col_faces,
        col_target_faces,
        row_contractions: Some(row_contractions),
    };
    z.structural_check().expect("lambda bar grid is structural");
    z
}

/// Moore loop suite: the retraction identity at breakpoints and random
/// times, Moore unit/associativity, and bar identities on loop tuples.
pub fn moore_suite(seed: u64, count: usize, dim: usize, max_breaks: usize) -> Report {
    let mut rng = gen::rng_from_seed(seed);
    let mut r = Report::new("moore");
    r.param("seed", seed).param("count", count).param("dim", dim);
    let mut retraction = true;
    let mut witness = None;
    for _ in 0..count {
        let w = gen::rand_loop(&mut rng, dim, max_breaks);
        let len = w.length();
        let mut times: Vec<BigRational> =
            w.breakpoints().iter().map(|(t, _)| t.clone()).collect();
        for _ in 0..50 {
            let u = gen::rand_rational_unit(&mut rng) * (&len + BigRational::one());
            times.push(u);
        }
        for u in &times {
            if let Some(msg) = crate::moore::retraction_witness(&w, u) {
                retraction = false;
                witness.get_or_insert(msg);
            }
        }
        let g = gamma(&w);
        if g.length() != len || g.ev_pointwise() != w {
            retraction = false;
            witness.get_or_insert("γ is not length-preserving".to_string());
        }
    }
    r.check(
        format!("ev(γ(ω)(u)) = ω(u) exactly on {count} loops"),
        retraction,
        witness,
    );
    let mut assoc = true;
    let mut unital = true;
    let mut bar_ok = true;
    for _ in 0..count / 2 {
        let a = gen::rand_loop(&mut rng, dim, max_breaks);
        let b = gen::rand_loop(&mut rng, dim, max_breaks);
        let c = gen::rand_loop(&mut rng, dim, max_breaks);
        assoc &= a.concat(&b).concat(&c) == a.concat(&b.concat(&c));
        let unit = MooreLoop::unit(dim);
        unital &= a.concat(&unit) == a && unit.concat(&a) == a;
        bar_ok &= bar_identities_on_loops(&[a, b, c]).is_valid();
    }
    r.check("Moore concatenation is exactly associative", assoc, None);
    r.check("the length-zero loop is a strict unit", unital, None);
    r.check("bar faces on loop tuples satisfy the facial identities", bar_ok, None);
    r
}

// ---------------------------------------------------------------------------
// Normalized-bar oracle, used by the stable-range checks.
// ---------------------------------------------------------------------------

/// The normalized bar complex of a finite monoid: degree-k generators are
/// tuples with no identity entries; faces that produce an identity entry
/// or drop off the ends follow the bar formula, with degenerate images
/// killed. An independent oracle for group homology in low degrees.
pub fn normalized_bar_complex(m: &FiniteMonoid, top: usize) -> ChainComplex {
    let mut generators: Vec<Vec<String>> = Vec::new();
    let mut index: Vec<std::collections::BTreeMap<Vec<usize>, usize>> = Vec::new();
    for k in 0..=top {
        let mut names = Vec::new();
        let mut idx = std::collections::BTreeMap::new();
        for o in 0..m.size().pow(k as u32) {
            let t = tuple_of_ordinal(o, m.size(), k);
            if t.iter().all(|&c| c != m.identity) {
                idx.insert(t.clone(), names.len());
                names.push(tuple_name(
                    &t.iter().map(|&c| m.names[c].as_str()).collect::<Vec<_>>(),
                ));
            }
        }
        generators.push(names);
        index.push(idx);
    }
    let mut boundaries = Vec::new();
    for k in 0..=top {
        let rows = if k == 0 { 0 } else { generators[k - 1].len() };
        let mut mtx = IntMat::zeros(rows, generators[k].len());
        if k >= 1 {
            for (t, &col) in &index[k] {
                for i in 0..=k {
                    let img: Vec<usize> = if i == 0 {
                        t[1..].to_vec()
                    } else if i == k {
                        t[..k - 1].to_vec()
                    } else {
                        let mut v = Vec::with_capacity(k - 1);
                        v.extend_from_slice(&t[..i - 1]);
                        v.push(m.mul(t[i - 1], t[i]));
                        v.extend_from_slice(&t[i + 1..]);
                        v
                    };
                    if let Some(&row) = index[k - 1].get(&img) {
                        let sign = if i % 2 == 0 {
                            num::BigInt::one()
                        } else {
                            -num::BigInt::one()
                        };
                        mtx.add_to(row, col, &sign);
                    }
                }
            }
        }
        boundaries.push(mtx);
    }
    ChainComplex {
        generators,
        boundaries,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rectify_suite_small_run_passes() {
        let r = rectify_suite(1, 4, 3);
        assert!(r.passed(), "{}", r.render_text());
    }

    #[test]
    fn point_suite_small_run_passes() {
        let r = point_suite(2, 4, 3);
        assert!(r.passed(), "{}", r.render_text());
    }

    #[test]
    fn libman_suite_small_run_passes() {
        let r = libman_suite(3, 2, 2);
        assert!(r.passed(), "{}", r.render_text());
    }

    #[test]
    fn compare_suite_small_run_passes() {
        let r = bifacial_compare_suite(4, 3, 2, 2);
        assert!(r.passed(), "{}", r.render_text());
    }

    #[test]
    fn petit_suite_small_run_passes() {
        let r = petit_suite(5, 4);
        assert!(r.passed(), "{}", r.render_text());
    }

    #[test]
    fn cotriple_suite_passes() {
        let r = cotriple_suite(2, 2, 2, 100_000);
        assert!(r.passed(), "{}", r.render_text());
    }

    #[test]
    fn moore_suite_small_run_passes() {
        let r = moore_suite(6, 10, 2, 8);
        assert!(r.passed(), "{}", r.render_text());
    }

    #[test]
    fn normalized_bar_of_z2() {
        let m = FiniteMonoid::cyclic(2);
        let c = normalized_bar_complex(&m, 4);
        let h = c.homology().unwrap();
        assert_eq!(h.group(0), HomologyGroup::free(1));
        assert_eq!(h.group(1), HomologyGroup::cyclic(2));
        assert!(h.group(2).is_trivial());
        assert_eq!(h.group(3), HomologyGroup::cyclic(2));
    }

    #[test]
    fn lambda_bar_grid_feeds_libman() {
        let x = FiniteMonoid::trivial();
        let e = FiniteMonoid::cyclic(2);
        let z = lambda_bar_grid(&x, &e, 3, 3);
        assert!(z.validate().is_valid());
        let mut r = Report::new("test");
        let mut rng = gen::rng_from_seed(9);
        run_libman_instance(&mut r, "lambda-grid", &z, 2, &mut rng);
        assert!(r.passed(), "{}", r.render_text());
    }

    #[test]
    fn hopf_report_z2_and_z3() {
        for name in ["z2", "z3"] {
            let m = FiniteMonoid::named(name).unwrap();
            let r = hopf_report(&m).unwrap();
            assert!(r.passed(), "{}", r.render_text());
        }
    }
}
