//! Seeded generators for the randomized suites: facial sets from random
//! simplicial complexes, contracted resolutions with twisted contractions,
//! bifacial grids whose row contractions genuinely fail to commute with the
//! column faces, section-lemma diagrams, and piecewise-linear loops.
//!
//! Every structure built here satisfies its defining identities by
//! construction, which the suites re-verify exhaustively; the *twists* are
//! the random part and are what keeps the rectification checks honest.

use num::rational::BigRational;
use num::BigInt;
use rand_chacha::ChaCha8Rng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use crate::bifacial::BifacialSet;
use crate::facial::{Augmentation, Contraction, FacialSet, Level};
use crate::monoid::FiniteMonoid;
use crate::moore::MooreLoop;
use crate::rectify::{PetitDiagram, ResolutionMap};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rand_pointed_level(rng: &mut ChaCha8Rng, max_extra: usize, tag: &str) -> Level {
    let extra = rng.gen_range(0..=max_extra);
    let mut names = vec!["*".to_string()];
    names.extend((0..extra).map(|i| format!("{tag}{i}")));
    Level::new(names, "*").unwrap()
}

/// A pointed facial set from a random simplicial complex: level `k` holds
/// the `k`-simplices plus a basepoint cell, faces delete vertices.
pub fn rand_facial_set(
    rng: &mut ChaCha8Rng,
    n_levels: usize,
    n_vertices: usize,
    n_facets: usize,
) -> FacialSet {
    use std::collections::BTreeSet;
    let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
    for _ in 0..n_facets {
        let size = rng.gen_range(1..=n_levels.min(n_vertices));
        let mut verts: Vec<usize> = (0..n_vertices).collect();
        verts.shuffle(rng);
        let mut facet: Vec<usize> = verts.into_iter().take(size).collect();
        facet.sort_unstable();
        let n = facet.len();
        for mask in 1u32..(1 << n) {
            let sub: Vec<usize> = (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| facet[i])
                .collect();
            all.insert(sub);
        }
    }
    let mut per_level: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n_levels];
    for s in all {
        if s.len() <= n_levels {
            per_level[s.len() - 1].push(s);
        }
    }
    let levels: Vec<Level> = per_level
        .iter()
        .map(|simps| {
            let mut names = vec!["*".to_string()];
            names.extend(simps.iter().map(|s| {
                s.iter()
                    .map(|v| format!("v{v}"))
                    .collect::<Vec<_>>()
                    .join(".")
            }));
            Level::new(names, "*").unwrap()
        })
        .collect();
    let mut faces = Vec::new();
    for k in 1..n_levels {
        let fam: Vec<Vec<usize>> = (0..=k)
            .map(|i| {
                let mut table = vec![0usize];
                for s in &per_level[k] {
                    let mut f = s.clone();
                    f.remove(i);
                    let idx = per_level[k - 1]
                        .iter()
                        .position(|t| *t == f)
                        .expect("closed under faces")
                        + 1;
                    table.push(idx);
                }
                table
            })
            .collect();
        faces.push(fam);
    }
    FacialSet::new(levels, faces, None, None).expect("generated facial set")
}

/// `base × Q^copies` with little-endian digit ordinals; digit 0 is the slot
/// the zeroth face strips.
fn product_level(base: &Level, q: &Level, copies: usize) -> Level {
    let s = q.size();
    let total = base.size() * s.pow(copies as u32);
    let mut names = Vec::with_capacity(total);
    for o in 0..total {
        let y = o / s.pow(copies as u32);
        let mut rest = o % s.pow(copies as u32);
        let mut digits = Vec::with_capacity(copies);
        for _ in 0..copies {
            digits.push(rest % s);
            rest /= s;
        }
        names.push(format!(
            "({};{})",
            base.name(y),
            digits
                .iter()
                .map(|&d| q.name(d))
                .collect::<Vec<_>>()
                .join(",")
        ));
    }
    let bp = {
        let y = base.basepoint();
        let o = y * s.pow(copies as u32)
            + (0..copies).map(|j| q.basepoint() * s.pow(j as u32)).sum::<usize>();
        names[o].clone()
    };
    Level::new(names, &bp).unwrap()
}

fn strip_digit(o: usize, base_size: usize, q_size: usize, copies: usize, slot: usize) -> usize {
    let s = q_size;
    let y = o / s.pow(copies as u32);
    let mut rest = o % s.pow(copies as u32);
    let mut digits = Vec::with_capacity(copies);
    for _ in 0..copies {
        digits.push(rest % s);
        rest /= s;
    }
    digits.remove(slot);
    let _ = base_size;
    let mut acc = 0usize;
    for (j, &d) in digits.iter().enumerate() {
        acc += d * s.pow(j as u32);
    }
    y * s.pow((copies - 1) as u32) + acc
}

fn insert_digit(
    o: usize,
    q_size: usize,
    copies: usize,
    slot: usize,
    value: usize,
) -> usize {
    let s = q_size;
    let y = o / s.pow(copies as u32);
    let mut rest = o % s.pow(copies as u32);
    let mut digits = Vec::with_capacity(copies + 1);
    for _ in 0..copies {
        digits.push(rest % s);
        rest /= s;
    }
    digits.insert(slot, value);
    let mut acc = 0usize;
    for (j, &d) in digits.iter().enumerate() {
        acc += d * s.pow(j as u32);
    }
    y * s.pow((copies + 1) as u32) + acc
}

fn base_of(o: usize, q_size: usize, copies: usize) -> usize {
    o / q_size.pow(copies as u32)
}

/// A contracted facial resolution of `base`: level `p = base × Q^{p+1}`,
/// faces strip digits, and the contraction inserts `twist(y)` in digit 0.
/// The twist is any pointed function, so the resolution is "random" while
/// every identity holds by construction.
pub fn twisted_resolution(base: &Level, q: &Level, twist: &[usize], n: usize) -> FacialSet {
    assert_eq!(twist.len(), base.size());
    assert_eq!(twist[base.basepoint()], q.basepoint());
    let s = q.size();
    let levels: Vec<Level> = (0..=n).map(|p| product_level(base, q, p + 1)).collect();
    let mut faces = Vec::new();
    for p in 1..=n {
        let fam: Vec<Vec<usize>> = (0..=p)
            .map(|i| {
                (0..levels[p].size())
                    .map(|o| strip_digit(o, base.size(), s, p + 1, i))
                    .collect()
            })
            .collect();
        faces.push(fam);
    }
    let aug = Augmentation {
        target: base.clone(),
        map: (0..levels[0].size()).map(|o| base_of(o, s, 1)).collect(),
    };
    let contraction = Contraction {
        maps: (0..=n)
            .map(|p| {
                if p == 0 {
                    (0..base.size()).map(|y| y * s + twist[y]).collect()
                } else {
                    (0..levels[p - 1].size())
                        .map(|o| insert_digit(o, s, p, 0, twist[base_of(o, s, p)]))
                        .collect()
                }
            })
            .collect(),
    };
    FacialSet::new(levels, faces, Some(aug), Some(contraction)).expect("twisted resolution")
}

pub fn rand_pointed_map(rng: &mut ChaCha8Rng, src: &Level, dst: &Level) -> Vec<usize> {
    (0..src.size())
        .map(|i| {
            if i == src.basepoint() {
                dst.basepoint()
            } else {
                rng.gen_range(0..dst.size())
            }
        })
        .collect()
}

/// A random contracted facial resolution: either a twisted product
/// resolution or the contracted bar resolution of a small monoid.
pub fn rand_contracted_resolution(rng: &mut ChaCha8Rng, n: usize) -> FacialSet {
    if rng.gen_bool(0.5) {
        let base = rand_pointed_level(rng, 2, "x");
        let q = rand_pointed_level(rng, 2, "q");
        let twist = rand_pointed_map(rng, &base, &q);
        twisted_resolution(&base, &q, &twist, n)
    } else {
        let m = rand_monoid(rng, 3);
        crate::bar::bar_facial(&m, crate::bar::BarVariant::P, n).expect("bar resolution")
    }
}

pub fn rand_monoid(rng: &mut ChaCha8Rng, max_size: usize) -> FiniteMonoid {
    let pool: Vec<&str> = match max_size {
        0 | 1 => vec!["trivial"],
        2 => vec!["trivial", "z2", "idem2"],
        3 => vec!["trivial", "z2", "z3", "idem2"],
        _ => vec!["trivial", "z2", "z3", "z4", "klein", "idem2"],
    };
    FiniteMonoid::named(pool[rng.gen_range(0..pool.len())]).unwrap()
}

/// A bifacial grid `Z_k^p = Y_k × Q^{p+1}` over a random column facial set,
/// with an independent contraction twist per row. Row contractions then fail
/// to commute with the column faces generically.
pub fn rand_bifacial(
    rng: &mut ChaCha8Rng,
    n_rows: usize,
    n_cols: usize,
    n_vertices: usize,
    n_facets: usize,
    q_extra: usize,
) -> BifacialSet {
    let y = rand_facial_set(rng, n_rows, n_vertices, n_facets);
    let q = rand_pointed_level(rng, q_extra.max(1), "q");
    let s = q.size();
    let twists: Vec<Vec<usize>> = (0..n_rows)
        .map(|k| rand_pointed_map(rng, y.level(k), &q))
        .collect();
    let grid: Vec<Vec<Level>> = (0..n_rows)
        .map(|k| {
            (0..n_cols)
                .map(|p| product_level(y.level(k), &q, p + 1))
                .collect()
        })
        .collect();
    let row_targets: Vec<Level> = (0..n_rows).map(|k| y.level(k).clone()).collect();
    let row_faces: Vec<Vec<Vec<Vec<usize>>>> = (0..n_rows)
        .map(|k| {
            (1..n_cols)
                .map(|p| {
                    (0..=p)
                        .map(|i| {
                            (0..grid[k][p].size())
                                .map(|o| strip_digit(o, y.level(k).size(), s, p + 1, i))
                                .collect()
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let row_aug: Vec<Vec<usize>> = (0..n_rows)
        .map(|k| (0..grid[k][0].size()).map(|o| base_of(o, s, 1)).collect())
        .collect();
    let col_faces: Vec<Vec<Vec<Vec<usize>>>> = (1..n_rows)
        .map(|k| {
            (0..n_cols)
                .map(|p| {
                    (0..=k)
                        .map(|i| {
                            (0..grid[k][p].size())
                                .map(|o| {
                                    let yk = base_of(o, s, p + 1);
                                    let rest = o % s.pow((p + 1) as u32);
                                    y.face(k, i, yk) * s.pow((p + 1) as u32) + rest
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let col_target_faces: Vec<Vec<Vec<usize>>> = (1..n_rows)
        .map(|k| (0..=k).map(|i| y.face_table(k, i).to_vec()).collect())
        .collect();
    let row_contractions: Vec<Vec<Vec<usize>>> = (0..n_rows)
        .map(|k| {
            (0..n_cols)
                .map(|p| {
                    if p == 0 {
                        (0..y.level(k).size())
                            .map(|yk| yk * s + twists[k][yk])
                            .collect()
                    } else {
                        (0..grid[k][p - 1].size())
                            .map(|o| insert_digit(o, s, p, 0, twists[k][base_of(o, s, p)]))
                            .collect()
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
    z.structural_check().expect("generated grid is structural");
    z
}

/// A section-lemma diagram: three twisted resolutions over a shared `Q`
/// with product-form vertical maps (facial by construction; the row
/// contractions still differ by their twists).
pub fn rand_petit_diagram(rng: &mut ChaCha8Rng) -> PetitDiagram {
    let q = rand_pointed_level(rng, 2, "q");
    let sa = rand_pointed_level(rng, 2, "a");
    let sb = rand_pointed_level(rng, 2, "b");
    let sc = rand_pointed_level(rng, 2, "c");
    let s = q.size();
    let make = |rng: &mut ChaCha8Rng, base: &Level| {
        let twist = rand_pointed_map(rng, base, &q);
        twisted_resolution(base, &q, &twist, 1)
    };
    let a = make(rng, &sa);
    let b = make(rng, &sb);
    let c = make(rng, &sc);
    let alpha_pts = rand_pointed_map(rng, &sb, &sa);
    let beta_pts = rand_pointed_map(rng, &sb, &sc);
    let lift = |pts: &[usize], copies: usize| -> Vec<usize> {
        (0..sb.size() * s.pow(copies as u32))
            .map(|o| {
                let yb = base_of(o, s, copies);
                let rest = o % s.pow(copies as u32);
                pts[yb] * s.pow(copies as u32) + rest
            })
            .collect()
    };
    let alpha = ResolutionMap {
        target_level: alpha_pts.clone(),
        levels: vec![lift(&alpha_pts, 1), lift(&alpha_pts, 2)],
    };
    let beta = ResolutionMap {
        target_level: beta_pts.clone(),
        levels: vec![lift(&beta_pts, 1), lift(&beta_pts, 2)],
    };
    PetitDiagram {
        a,
        b,
        c,
        alpha,
        beta,
    }
}

pub fn rand_rational_unit(rng: &mut ChaCha8Rng) -> BigRational {
    let den = rng.gen_range(1i64..=8);
    let num = rng.gen_range(0..=den);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Barycentric coordinates with exactly `zeros` vanishing slots.
pub fn rand_barycentric(rng: &mut ChaCha8Rng, len: usize, zeros: usize) -> Vec<BigRational> {
    assert!(zeros < len);
    let mut slots: Vec<usize> = (0..len).collect();
    slots.shuffle(rng);
    let zero_slots: std::collections::BTreeSet<usize> =
        slots.into_iter().take(zeros).collect();
    let raw: Vec<BigRational> = (0..len)
        .map(|i| {
            if zero_slots.contains(&i) {
                BigRational::from_integer(BigInt::from(0))
            } else {
                BigRational::new(
                    BigInt::from(rng.gen_range(1i64..=5)),
                    BigInt::from(rng.gen_range(1i64..=3)),
                )
            }
        })
        .collect();
    let sum: BigRational = raw.iter().cloned().sum();
    raw.into_iter().map(|t| t / &sum).collect()
}

/// A random PL loop in `Q^dim` with at most `max_breaks` breakpoints.
pub fn rand_loop(rng: &mut ChaCha8Rng, dim: usize, max_breaks: usize) -> MooreLoop {
    let interior = rng.gen_range(0..=max_breaks.saturating_sub(2));
    let mut t = BigRational::from_integer(BigInt::from(0));
    let mut breakpoints = vec![(t.clone(), vec![BigRational::from_integer(BigInt::from(0)); dim])];
    for _ in 0..interior {
        t += BigRational::new(
            BigInt::from(rng.gen_range(1i64..=4)),
            BigInt::from(rng.gen_range(1i64..=4)),
        );
        let p: Vec<BigRational> = (0..dim)
            .map(|_| {
                BigRational::new(
                    BigInt::from(rng.gen_range(-3i64..=3)),
                    BigInt::from(rng.gen_range(1i64..=3)),
                )
            })
            .collect();
        breakpoints.push((t.clone(), p));
    }
    if interior > 0 {
        t += BigRational::new(
            BigInt::from(rng.gen_range(1i64..=4)),
            BigInt::from(rng.gen_range(1i64..=4)),
        );
        breakpoints.push((t, vec![BigRational::from_integer(BigInt::from(0)); dim]));
    }
    MooreLoop::new(dim, breakpoints).expect("generated loop")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_facial_sets_are_valid() {
        let mut rng = rng_from_seed(7);
        for _ in 0..20 {
            let f = rand_facial_set(&mut rng, 4, 4, 3);
            assert!(f.validate_faces().is_valid());
        }
    }

    #[test]
    fn twisted_resolutions_validate_everything() {
        let mut rng = rng_from_seed(11);
        for _ in 0..20 {
            let f = rand_contracted_resolution(&mut rng, 3);
            assert!(f.validate_all().is_valid());
        }
    }

    #[test]
    fn bifacial_grids_validate() {
        let mut rng = rng_from_seed(13);
        for _ in 0..10 {
            let z = rand_bifacial(&mut rng, 3, 3, 3, 2, 1);
            assert!(z.validate().is_valid());
        }
    }

    #[test]
    fn twists_do_not_commute_with_columns_generically() {
        let mut rng = rng_from_seed(17);
        let mut found = false;
        for _ in 0..40 {
            let z = rand_bifacial(&mut rng, 3, 3, 3, 3, 2);
            'search: for k in 1..z.n_rows() {
                for i in 0..=k {
                    for cell in 0..z.row_targets[k].size() {
                        let lhs = z.s(k - 1, 0, z.col_target_face(k, i, cell));
                        let rhs = z.col_face(k, 0, i, z.s(k, 0, cell));
                        if lhs != rhs {
                            found = true;
                            break 'search;
                        }
                    }
                }
            }
        }
        assert!(found, "every sampled grid had commuting contractions");
    }

    #[test]
    fn petit_diagrams_validate() {
        let mut rng = rng_from_seed(19);
        for _ in 0..10 {
            let d = rand_petit_diagram(&mut rng);
            assert!(d.a.validate_all().is_valid());
            assert!(d.b.validate_all().is_valid());
            assert!(d.c.validate_all().is_valid());
            d.alpha.validate(&d.b, &d.a).unwrap();
            d.beta.validate(&d.b, &d.c).unwrap();
        }
    }

    #[test]
    fn loops_generate() {
        let mut rng = rng_from_seed(23);
        for _ in 0..50 {
            let l = rand_loop(&mut rng, 2, 12);
            assert!(l.breakpoints().len() <= 12);
        }
    }
}
