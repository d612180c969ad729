//! Sparse vectors and exact elimination over GF(p).

use std::collections::HashMap;

use crate::field::{PrimeField, Scalar};

/// Sparse vector with strictly increasing column indices and no zero entries.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseVec {
    entries: Vec<(u32, Scalar)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec::default()
    }

    pub fn unit(col: u32) -> Self {
        SparseVec {
            entries: vec![(col, Scalar::ONE)],
        }
    }

    /// Builds from unsorted entries, summing duplicates.
    pub fn from_entries(mut raw: Vec<(u32, Scalar)>, k: PrimeField) -> Self {
        raw.sort_by_key(|e| e.0);
        let mut entries: Vec<(u32, Scalar)> = Vec::with_capacity(raw.len());
        for (c, v) in raw {
            match entries.last_mut() {
                Some(last) if last.0 == c => last.1 = k.add(last.1, v),
                _ => entries.push((c, v)),
            }
        }
        entries.retain(|e| !e.1.is_zero());
        SparseVec { entries }
    }

    pub fn entries(&self) -> &[(u32, Scalar)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lead(&self) -> Option<(u32, Scalar)> {
        self.entries.first().copied()
    }

    pub fn get(&self, col: u32) -> Scalar {
        match self.entries.binary_search_by_key(&col, |e| e.0) {
            Ok(i) => self.entries[i].1,
            Err(_) => Scalar::ZERO,
        }
    }

    pub fn scale(&mut self, c: Scalar, k: PrimeField) {
        if c.is_zero() {
            self.entries.clear();
        } else {
            for e in &mut self.entries {
                e.1 = k.mul(e.1, c);
            }
        }
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: Scalar, other: &SparseVec, k: PrimeField) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.entries, &other.entries);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, k.mul(c, b[j].1)));
                j += 1;
            } else {
                let v = k.add(a[i].1, k.mul(c, b[j].1));
                if !v.is_zero() {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        self.entries = out;
    }
}

/// Echelon form with pivots at the smallest column of each row, each row
/// scaled so its pivot is one.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: PrimeField,
    rows: Vec<SparseVec>,
    by_pivot: HashMap<u32, usize>,
}

impl Echelon {
    pub fn new(field: PrimeField) -> Self {
        Echelon {
            field,
            rows: Vec::new(),
            by_pivot: HashMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, mut v: SparseVec) -> bool {
        let k = self.field;
        while let Some((col, c)) = v.lead() {
            let Some(&r) = self.by_pivot.get(&col) else {
                break;
            };
            v.axpy(k.neg(c), &self.rows[r], k);
        }
        self.push_reduced(v)
    }

    fn push_reduced(&mut self, mut v: SparseVec) -> bool {
        let Some((col, c)) = v.lead() else {
            return false;
        };
        let inv = self.field.inv(c).expect("nonzero pivot");
        v.scale(inv, self.field);
        self.by_pivot.insert(col, self.rows.len());
        self.rows.push(v);
        true
    }

    /// True when `v` lies in the span of the rows.
    pub fn contains(&self, v: &SparseVec) -> bool {
        let mut v = v.clone();
        let k = self.field;
        let mut i = 0;
        while i < v.entries.len() {
            let (col, c) = v.entries[i];
            match self.by_pivot.get(&col) {
                Some(&r) => v.axpy(k.neg(c), &self.rows[r], k),
                None => i += 1,
            }
        }
        v.is_zero()
    }

    /// Fully reduced rows sorted by pivot.
    pub fn into_rref(self) -> Vec<SparseVec> {
        let k = self.field;
        let mut rows = self.rows;
        rows.sort_by_key(|r| r.lead().map(|e| e.0));
        let pivot_row: HashMap<u32, usize> = rows
            .iter()
            .enumerate()
            .map(|(i, r)| (r.lead().unwrap().0, i))
            .collect();
        for i in (0..rows.len()).rev() {
            let mut row = std::mem::take(&mut rows[i]);
            let mut pos = 1;
            while pos < row.entries.len() {
                let (col, c) = row.entries[pos];
                match pivot_row.get(&col) {
                    Some(&j) if j != i => row.axpy(k.neg(c), &rows[j], k),
                    _ => pos += 1,
                }
            }
            rows[i] = row;
        }
        rows
    }
}

/// Kernel of the map sending unit vector `i` to `images[i]`, as a list of
/// coefficient vectors over the domain indices.
pub fn kernel(images: &[SparseVec], k: PrimeField) -> Vec<SparseVec> {
    let mut rows: Vec<SparseVec> = Vec::new();
    let mut combos: Vec<SparseVec> = Vec::new();
    let mut by_pivot: HashMap<u32, usize> = HashMap::new();
    let mut out = Vec::new();
    for (i, img) in images.iter().enumerate() {
        let mut v = img.clone();
        let mut combo = SparseVec::unit(i as u32);
        while let Some((col, c)) = v.lead() {
            let Some(&r) = by_pivot.get(&col) else { break };
            let m = k.neg(c);
            v.axpy(m, &rows[r], k);
            combo.axpy(m, &combos[r], k);
        }
        match v.lead() {
            None => out.push(combo),
            Some((col, c)) => {
                let inv = k.inv(c).expect("nonzero pivot");
                v.scale(inv, k);
                combo.scale(inv, k);
                by_pivot.insert(col, rows.len());
                rows.push(v);
                combos.push(combo);
            }
        }
    }
    out
}

/// Reduced row echelon basis of the span of `vectors`.
pub fn rref(vectors: impl IntoIterator<Item = SparseVec>, k: PrimeField) -> Vec<SparseVec> {
    let mut e = Echelon::new(k);
    for v in vectors {
        e.insert(v);
    }
    e.into_rref()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(k: PrimeField, e: &[(u32, i64)]) -> SparseVec {
        SparseVec::from_entries(e.iter().map(|&(c, v)| (c, k.scalar(v))).collect(), k)
    }

    #[test]
    fn axpy_cancels() {
        let k = PrimeField::new(3).unwrap();
        let mut a = sv(k, &[(0, 1), (2, 2)]);
        a.axpy(k.scalar(1), &sv(k, &[(2, 1), (5, 1)]), k);
        assert_eq!(a, sv(k, &[(0, 1), (5, 1)]));
    }

    #[test]
    fn kernel_of_dependent_columns() {
        let k = PrimeField::new(2).unwrap();
        let imgs = vec![
            sv(k, &[(0, 1)]),
            sv(k, &[(1, 1)]),
            sv(k, &[(0, 1), (1, 1)]),
            SparseVec::new(),
        ];
        let ker = rref(kernel(&imgs, k), k);
        assert_eq!(
            ker,
            vec![sv(k, &[(0, 1), (1, 1), (2, 1)]), sv(k, &[(3, 1)])]
        );
    }

    #[test]
    fn rref_is_reduced() {
        let k = PrimeField::new(5).unwrap();
        let rows = rref(
            vec![sv(k, &[(0, 2), (1, 1), (2, 3)]), sv(k, &[(1, 1), (2, 1)])],
            k,
        );
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].get(1), Scalar::ZERO);
        assert_eq!(rows[0].lead().unwrap(), (0, Scalar::ONE));
        assert_eq!(rows[1].lead().unwrap(), (1, Scalar::ONE));
    }

    #[test]
    fn membership() {
        let k = PrimeField::new(7).unwrap();
        let mut e = Echelon::new(k);
        e.insert(sv(k, &[(0, 1), (3, 2)]));
        e.insert(sv(k, &[(1, 4)]));
        assert!(e.contains(&sv(k, &[(0, 3), (1, 1), (3, 6)])));
        assert!(!e.contains(&sv(k, &[(3, 1)])));
    }
}
