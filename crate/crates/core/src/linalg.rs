//! Incremental row reduction over GF(p).
//!
//! Rows are dense coefficient vectors indexed by degree; a row's pivot is
//! its highest nonzero position. Every row can carry a companion value that
//! undergoes the same linear operations, which is how spans remember a
//! preimage for each basis element.

use crate::field::Field;
use crate::poly::Poly;

pub(crate) trait Companion: Clone {
    /// `self -= c * other`
    fn sub_scaled(&mut self, field: Field, c: u32, other: &Self);
    fn scale(&mut self, field: Field, c: u32);
}

impl Companion for () {
    fn sub_scaled(&mut self, _: Field, _: u32, _: &Self) {}
    fn scale(&mut self, _: Field, _: u32) {}
}

impl Companion for Poly {
    fn sub_scaled(&mut self, _: Field, c: u32, other: &Self) {
        *self = &*self - &other.scale(c);
    }

    fn scale(&mut self, _: Field, c: u32) {
        *self = Poly::scale(self, c);
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Echelon<T> {
    field: Field,
    rows: Vec<Option<(Vec<u32>, T)>>,
}

fn top(v: &[u32]) -> Option<usize> {
    v.iter().rposition(|&c| c != 0)
}

fn sub_scaled_vec(field: Field, v: &mut [u32], c: u32, row: &[u32]) {
    for (a, &b) in v.iter_mut().zip(row) {
        if b != 0 {
            *a = field.sub(*a, field.mul(c, b));
        }
    }
}

impl<T: Companion> Echelon<T> {
    pub fn new(field: Field) -> Self {
        Echelon {
            field,
            rows: Vec::new(),
        }
    }

    fn pivot_row(&self, d: usize) -> Option<&(Vec<u32>, T)> {
        self.rows.get(d).and_then(Option::as_ref)
    }

    /// Reduces `v` by the current rows, top-down. Returns the residual and
    /// its companion.
    pub fn reduce(&self, mut v: Vec<u32>, mut tag: T) -> (Vec<u32>, T) {
        let f = self.field;
        let mut hi = top(&v);
        while let Some(d) = hi {
            match self.pivot_row(d) {
                Some((row, rtag)) => {
                    let c = v[d];
                    sub_scaled_vec(f, &mut v[..=d], c, row);
                    tag.sub_scaled(f, c, rtag);
                    hi = top(&v[..d]);
                }
                None => break,
            }
        }
        v.truncate(hi.map_or(0, |d| d + 1));
        (v, tag)
    }

    /// Whether `v` reduces to zero.
    pub fn contains(&self, v: &[u32]) -> bool {
        let f = self.field;
        let mut v = v.to_vec();
        let mut hi = top(&v);
        while let Some(d) = hi {
            match self.pivot_row(d) {
                Some((row, _)) => {
                    let c = v[d];
                    sub_scaled_vec(f, &mut v[..=d], c, row);
                    hi = top(&v[..d]);
                }
                None => return false,
            }
        }
        true
    }

    /// Adds a vector to the span; returns its new pivot, or `None` when it
    /// was already dependent.
    pub fn insert(&mut self, v: Vec<u32>, tag: T) -> Option<usize> {
        let (mut v, mut tag) = self.reduce(v, tag);
        let d = top(&v)?;
        let inv = self.field.inv(v[d]).expect("pivot is nonzero");
        for a in v.iter_mut() {
            *a = self.field.mul(*a, inv);
        }
        tag.scale(self.field, inv);
        if self.rows.len() <= d {
            self.rows.resize(d + 1, None);
        }
        self.rows[d] = Some((v, tag));
        Some(d)
    }

    /// Clears every row at the pivot positions of the other rows, giving
    /// the unique reduced echelon form.
    pub fn fully_reduce(&mut self) {
        let f = self.field;
        let pivots: Vec<usize> = self.pivots().collect();
        for (idx, &e) in pivots.iter().enumerate() {
            let (mut row, mut tag) = self.rows[e].take().expect("pivot present");
            for &d in pivots[..idx].iter().rev() {
                let c = row[d];
                if c == 0 {
                    continue;
                }
                let (prow, ptag) = self.rows[d].as_ref().expect("pivot present");
                sub_scaled_vec(f, &mut row[..=d], c, prow);
                tag.sub_scaled(f, c, ptag);
            }
            self.rows[e] = Some((row, tag));
        }
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, r)| r.is_some())
            .map(|(d, _)| d)
    }

    /// Rows in increasing pivot order.
    pub fn into_rows(self) -> Vec<(usize, Vec<u32>, T)> {
        self.rows
            .into_iter()
            .enumerate()
            .filter_map(|(d, r)| r.map(|(v, t)| (d, v, t)))
            .collect()
    }
}
