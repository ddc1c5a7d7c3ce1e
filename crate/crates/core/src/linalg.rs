use crate::scalar::{Field, Scalar};

/// Incremental row echelon form over an exact field.
#[derive(Debug, Clone)]
pub struct Echelon {
    field: Field,
    cols: usize,
    /// fully reduced rows with their pivot columns
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl Echelon {
    pub fn new(field: Field, cols: usize) -> Self {
        Echelon { field, cols, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds a row; returns whether the rank went up.
    pub fn push(&mut self, mut row: Vec<Scalar>) -> bool {
        assert_eq!(row.len(), self.cols);
        for (p, r) in &self.rows {
            if !row[*p].is_zero() {
                let c = row[*p].clone();
                for j in 0..self.cols {
                    if !r[j].is_zero() {
                        row[j] = row[j].sub(&c.mul(&r[j]));
                    }
                }
            }
        }
        let pivot = match row.iter().position(|x| !x.is_zero()) {
            Some(p) => p,
            None => return false,
        };
        let inv = row[pivot].inv();
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x = x.mul(&inv);
            }
        }
        for (_, r) in self.rows.iter_mut() {
            if !r[pivot].is_zero() {
                let c = r[pivot].clone();
                for j in 0..self.cols {
                    if !row[j].is_zero() {
                        r[j] = r[j].sub(&c.mul(&row[j]));
                    }
                }
            }
        }
        self.rows.push((pivot, row));
        true
    }

    /// Basis of `{x : row . x = 0 for all rows}`.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let pivots: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (i, (p, _)) in self.rows.iter().enumerate() {
                v[*p] = Some(i);
            }
            v
        };
        let mut out = Vec::new();
        for free in 0..self.cols {
            if pivots[free].is_some() {
                continue;
            }
            let mut x = vec![self.field.zero(); self.cols];
            x[free] = self.field.one();
            for (p, r) in &self.rows {
                if !r[free].is_zero() {
                    x[*p] = r[free].neg();
                }
            }
            out.push(x);
        }
        out
    }
}

/// Rank of a list of vectors.
pub fn rank(field: Field, vectors: &[Vec<Scalar>]) -> usize {
    let cols = vectors.first().map(|v| v.len()).unwrap_or(0);
    let mut e = Echelon::new(field, cols);
    for v in vectors {
        e.push(v.clone());
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(f: Field, xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| f.from_i64(x)).collect()
    }

    #[test]
    fn nullspace_of_small_system() {
        for f in [Field::Rational, Field::Prime(5)] {
            let mut e = Echelon::new(f, 3);
            assert!(e.push(row(f, &[1, -1, 0])));
            assert!(!e.push(row(f, &[2, -2, 0])));
            assert!(e.push(row(f, &[0, 1, -1])));
            let ns = e.nullspace();
            assert_eq!(ns, vec![row(f, &[1, 1, 1])]);
        }
    }

    #[test]
    fn characteristic_changes_rank() {
        let v = vec![row(Field::Rational, &[1, 1]), row(Field::Rational, &[1, -1])];
        assert_eq!(rank(Field::Rational, &v), 2);
        let f2 = Field::Prime(2);
        let w = vec![row(f2, &[1, 1]), row(f2, &[1, -1])];
        assert_eq!(rank(f2, &w), 1);
    }
}
