//! Finite monoids given by multiplication tables, with a small named catalog
//! used by the command-line suites.

use serde::{Deserialize, Serialize};

use crate::error::StructureError;
use crate::facial::ValidationReport;
use crate::facial::Violation;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteMonoid {
    pub names: Vec<String>,
    pub identity: usize,
    /// table[a][b] = a * b
    pub table: Vec<Vec<usize>>,
}

impl FiniteMonoid {
    pub fn new(
        names: Vec<String>,
        identity: usize,
        table: Vec<Vec<usize>>,
    ) -> Result<FiniteMonoid, StructureError> {
        let n = names.len();
        if identity >= n {
            return Err(StructureError::new("identity index out of range"));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(StructureError::new("multiplication table is not total"));
        }
        if table.iter().flatten().any(|&v| v >= n) {
            return Err(StructureError::new("multiplication table out of range"));
        }
        Ok(FiniteMonoid {
            names,
            identity,
            table,
        })
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    /// Associativity and identity laws, exhaustively.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let n = self.size();
        for a in 0..n {
            if self.mul(self.identity, a) != a || self.mul(a, self.identity) != a {
                report.violations.push(Violation {
                    law: "identity laws".into(),
                    level: -1,
                    indices: vec![],
                    cell: self.names[a].clone(),
                    lhs: self.names[self.mul(self.identity, a)].clone(),
                    rhs: self.names[a].clone(),
                });
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = self.mul(self.mul(a, b), c);
                    let rhs = self.mul(a, self.mul(b, c));
                    if lhs != rhs {
                        report.violations.push(Violation {
                            law: "associativity".into(),
                            level: -1,
                            indices: vec![a as i64, b as i64, c as i64],
                            cell: format!("({},{},{})", self.names[a], self.names[b], self.names[c]),
                            lhs: self.names[lhs].clone(),
                            rhs: self.names[rhs].clone(),
                        });
                    }
                }
            }
        }
        report
    }

    pub fn inverse(&self, a: usize) -> Option<usize> {
        (0..self.size())
            .find(|&b| self.mul(a, b) == self.identity && self.mul(b, a) == self.identity)
    }

    pub fn is_group(&self) -> bool {
        (0..self.size()).all(|a| self.inverse(a).is_some())
    }

    pub fn cyclic(n: usize) -> FiniteMonoid {
        assert!(n >= 1);
        let names = (0..n)
            .map(|i| if i == 0 { "e".to_string() } else { format!("g{i}") })
            .collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteMonoid::new(names, 0, table).unwrap()
    }

    pub fn trivial() -> FiniteMonoid {
        FiniteMonoid::cyclic(1)
    }

    pub fn product(&self, other: &FiniteMonoid) -> FiniteMonoid {
        let n = self.size() * other.size();
        let name = |i: usize| {
            format!(
                "({},{})",
                self.names[i / other.size()],
                other.names[i % other.size()]
            )
        };
        let table = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| {
                        let (a1, b1) = (x / other.size(), x % other.size());
                        let (a2, b2) = (y / other.size(), y % other.size());
                        self.mul(a1, a2) * other.size() + other.mul(b1, b2)
                    })
                    .collect()
            })
            .collect();
        FiniteMonoid::new(
            (0..n).map(name).collect(),
            self.identity * other.size() + other.identity,
            table,
        )
        .unwrap()
    }

    /// Symmetric group on three letters, in cycle-ish notation.
    pub fn symmetric3() -> FiniteMonoid {
        // Permutations of (0,1,2) listed as images.
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [1, 2, 0],
            [2, 0, 1],
            [1, 0, 2],
            [0, 2, 1],
            [2, 1, 0],
        ];
        let names = vec!["e", "r", "r2", "s01", "s12", "s02"]
            .into_iter()
            .map(String::from)
            .collect();
        let compose = |p: &[usize; 3], q: &[usize; 3]| [p[q[0]], p[q[1]], p[q[2]]];
        let table = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| {
                        let pq = compose(p, q);
                        perms.iter().position(|r| *r == pq).unwrap()
                    })
                    .collect()
            })
            .collect();
        FiniteMonoid::new(names, 0, table).unwrap()
    }

    /// Two-element monoid {e, a} with a*a = a; not a group.
    pub fn idempotent2() -> FiniteMonoid {
        FiniteMonoid::new(
            vec!["e".into(), "a".into()],
            0,
            vec![vec![0, 1], vec![1, 1]],
        )
        .unwrap()
    }

    /// Named catalog for the CLI and the suites.
    pub fn named(name: &str) -> Option<FiniteMonoid> {
        match name {
            "trivial" => Some(FiniteMonoid::trivial()),
            "z2" => Some(FiniteMonoid::cyclic(2)),
            "z3" => Some(FiniteMonoid::cyclic(3)),
            "z4" => Some(FiniteMonoid::cyclic(4)),
            "z5" => Some(FiniteMonoid::cyclic(5)),
            "klein" => Some(FiniteMonoid::cyclic(2).product(&FiniteMonoid::cyclic(2))),
            "s3" => Some(FiniteMonoid::symmetric3()),
            "idem2" => Some(FiniteMonoid::idempotent2()),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_is_valid() {
        for name in ["trivial", "z2", "z3", "z4", "z5", "klein", "s3", "idem2"] {
            let m = FiniteMonoid::named(name).unwrap();
            assert!(m.validate().is_valid(), "{name} fails its laws");
        }
        assert!(FiniteMonoid::named("z2").unwrap().is_group());
        assert!(FiniteMonoid::named("s3").unwrap().is_group());
        assert!(!FiniteMonoid::named("idem2").unwrap().is_group());
        assert!(!FiniteMonoid::symmetric3().validate().violations.iter().any(|_| false));
    }

    #[test]
    fn broken_table_is_caught() {
        // Force a*a = e in the idempotent table header: breaks associativity?
        // (a*a)*a = e*a = a; a*(a*a) = a*e = a — still associative; instead
        // break the identity law.
        let m = FiniteMonoid::new(
            vec!["e".into(), "a".into()],
            0,
            vec![vec![0, 0], vec![1, 1]],
        )
        .unwrap();
        assert!(!m.validate().is_valid());
    }
}
