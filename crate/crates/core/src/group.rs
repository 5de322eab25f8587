//! Finite groups given by multiplication tables.

use crate::error::{QgError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    pub name: String,
    pub labels: Vec<String>,
    /// `table[a][b]` is the index of the product `ab`.
    pub table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl GroupTable {
    pub fn new(name: &str, labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(QgError::InvalidGroupTable("empty table".into()));
        }
        if labels.len() != n {
            return Err(QgError::InvalidGroupTable(format!(
                "{} labels for {} elements",
                labels.len(),
                n
            )));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(QgError::InvalidGroupTable(format!("row {a} has length {}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&p| p >= n) {
                return Err(QgError::InvalidGroupTable(format!("entry {bad} out of range in row {a}")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(QgError::InvalidGroupTable(format!(
                            "not associative at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| QgError::InvalidGroupTable("no identity element".into()))?;
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| QgError::InvalidGroupTable(format!("element {a} has no inverse")))?;
            inverses.push(inv);
        }
        Ok(Self {
            name: name.to_string(),
            labels,
            table,
            identity,
            inverses,
        })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    pub fn cyclic(n: usize) -> Self {
        let labels = (0..n).map(|k| format!("g{k}")).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::new(&format!("z{n}"), labels, table).expect("cyclic table is a group")
    }

    /// Z2 x Z2 with elements ordered (0,0), (1,0), (0,1), (1,1).
    pub fn klein() -> Self {
        let labels = ["e", "a", "b", "ab"].iter().map(|s| s.to_string()).collect();
        let table = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
        Self::new("z2xz2", labels, table).expect("Klein table is a group")
    }

    /// The symmetric group on three letters, elements as permutations in
    /// lexicographic order; composition `(pq)(i) = p(q(i))`.
    pub fn s3() -> Self {
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let table = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| index([p[q[0]], p[q[1]], p[q[2]]]))
                    .collect()
            })
            .collect();
        let labels = perms
            .iter()
            .map(|p| format!("{}{}{}", p[0], p[1], p[2]))
            .collect();
        Self::new("s3", labels, table).expect("S3 table is a group")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_tables_are_groups() {
        assert_eq!(GroupTable::cyclic(4).order(), 4);
        assert!(GroupTable::klein().is_abelian());
        let s3 = GroupTable::s3();
        assert_eq!(s3.identity(), 0);
        assert!(!s3.is_abelian());
    }

    #[test]
    fn rejects_non_group() {
        // a constant table has no identity
        let err = GroupTable::new("bad", vec!["x".into(), "y".into()], vec![vec![0, 0], vec![0, 0]]);
        assert!(matches!(err, Err(QgError::InvalidGroupTable(_))));
        let err = GroupTable::new("bad", vec!["x".into()], vec![vec![3]]);
        assert!(matches!(err, Err(QgError::InvalidGroupTable(_))));
    }
}
