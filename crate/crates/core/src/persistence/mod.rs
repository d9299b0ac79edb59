//! Filtered cell complexes and their persistence barcodes over ℤ/2.

mod cubical;
mod io;
mod rips;

pub use cubical::{cubical_complex, CubicalBudget, Direction, GrayscaleImage};
pub use io::{
    encode_pgm, parse_image_csv, parse_pgm, parse_point_cloud, read_image, read_point_cloud,
    write_pgm,
};
pub use rips::{rips_complex, PointCloud, RipsBudget};

use serde::{Deserialize, Serialize};

use crate::barcode::{Barcode, BarcodeSet, Interval};
use crate::error::{Error, Result};
use crate::scalar::{cmp, Real};

/// A cell of a filtered complex. `boundary` lists indices of the codimension-one
/// faces in the owning [`FilteredComplex`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cell<T> {
    pub dim: usize,
    pub filtration: T,
    pub boundary: Vec<usize>,
}

/// Direction in which filtration values are swept.
///
/// `Increasing` is the usual sublevel filtration. `Decreasing` sweeps from
/// high to low values (superlevel sets); faces then carry values at least as
/// large as their cofaces, and barcodes are reported in negated values so that
/// every interval still satisfies `birth <= death`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FiltrationOrder {
    #[default]
    Increasing,
    Decreasing,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct FilteredComplex<T> {
    pub cells: Vec<Cell<T>>,
    pub order: FiltrationOrder,
}

impl<T: Real> FilteredComplex<T> {
    pub fn new(cells: Vec<Cell<T>>) -> Self {
        FilteredComplex {
            cells,
            order: FiltrationOrder::Increasing,
        }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn max_dim(&self) -> Option<usize> {
        self.cells.iter().map(|c| c.dim).max()
    }

    /// Sweep key of a raw filtration value: the value itself, or its negation
    /// for decreasing filtrations.
    #[inline]
    pub fn key(&self, value: T) -> T {
        match self.order {
            FiltrationOrder::Increasing => value,
            FiltrationOrder::Decreasing => -value,
        }
    }

    /// Checks face dimensions, face filtration values and index ranges.
    pub fn validate(&self) -> Result<()> {
        for (i, c) in self.cells.iter().enumerate() {
            if c.filtration.is_nan() {
                return Err(Error::Structure(format!("cell {i} has NaN filtration")));
            }
            if c.dim == 0 && !c.boundary.is_empty() {
                return Err(Error::Structure(format!("vertex {i} has a boundary")));
            }
            if c.boundary.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Structure(format!(
                    "boundary of cell {i} is not strictly sorted"
                )));
            }
            for &f in &c.boundary {
                let face = self.cells.get(f).ok_or_else(|| {
                    Error::Structure(format!("cell {i} references missing cell {f}"))
                })?;
                if face.dim + 1 != c.dim {
                    return Err(Error::Structure(format!(
                        "cell {i} of dim {} has face {f} of dim {}",
                        c.dim, face.dim
                    )));
                }
                if self.key(face.filtration) > self.key(c.filtration) {
                    return Err(Error::Structure(format!(
                        "face {f} enters after cell {i}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Cell indices in sweep order: by key, then dimension, then index.
    pub fn filtration_order(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.cells.len()).collect();
        idx.sort_by(|&a, &b| {
            let (ca, cb) = (&self.cells[a], &self.cells[b]);
            cmp(&self.key(ca.filtration), &self.key(cb.filtration))
                .then(ca.dim.cmp(&cb.dim))
                .then(a.cmp(&b))
        });
        idx
    }
}

/// Birth/death pairing of a reduced boundary matrix, in original cell indices.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Pairing {
    /// `(birth cell, death cell)` pairs.
    pub pairs: Vec<(usize, usize)>,
    /// Cells creating classes that never die.
    pub essential: Vec<usize>,
}

/// Standard left-to-right column reduction of the ℤ/2 boundary matrix.
pub fn reduce<T: Real>(fc: &FilteredComplex<T>) -> Result<Pairing> {
    fc.validate()?;
    let order = fc.filtration_order();
    let mut pos = vec![0usize; order.len()];
    for (p, &i) in order.iter().enumerate() {
        pos[i] = p;
    }

    const NONE: usize = usize::MAX;
    // pivot_col[row] = column whose lowest one sits in `row`.
    let mut pivot_col = vec![NONE; order.len()];
    let mut columns: Vec<Vec<usize>> = Vec::with_capacity(order.len());
    let mut positive = vec![true; order.len()];
    let mut pairs = Vec::new();
    let mut scratch = Vec::new();

    for (j, &cell) in order.iter().enumerate() {
        let mut col: Vec<usize> = fc.cells[cell].boundary.iter().map(|&f| pos[f]).collect();
        col.sort_unstable();
        while let Some(&low) = col.last() {
            let other = pivot_col[low];
            if other == NONE {
                break;
            }
            add_columns(&mut col, &columns[other], &mut scratch);
        }
        if let Some(&low) = col.last() {
            pivot_col[low] = j;
            positive[j] = false;
            positive[low] = false;
            pairs.push((order[low], cell));
        }
        columns.push(col);
    }

    let essential = (0..order.len())
        .filter(|&j| positive[j])
        .map(|j| order[j])
        .collect();
    Ok(Pairing { pairs, essential })
}

/// `col ^= other` on sorted index lists.
fn add_columns(col: &mut Vec<usize>, other: &[usize], scratch: &mut Vec<usize>) {
    scratch.clear();
    let (mut i, mut j) = (0, 0);
    while i < col.len() && j < other.len() {
        match col[i].cmp(&other[j]) {
            std::cmp::Ordering::Less => {
                scratch.push(col[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                scratch.push(other[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    scratch.extend_from_slice(&col[i..]);
    scratch.extend_from_slice(&other[j..]);
    std::mem::swap(col, scratch);
}

/// Barcodes of every dimension present in the complex.
///
/// Zero-length intervals from pairs entering at the same value are kept; use
/// [`Barcode::normalize`] to drop them. Values are sweep keys, i.e. negated
/// for [`FiltrationOrder::Decreasing`].
pub fn compute_persistence<T: Real>(fc: &FilteredComplex<T>) -> Result<BarcodeSet<T>> {
    let pairing = reduce(fc)?;
    let top = fc.max_dim().unwrap_or(0);
    let mut per_dim: Vec<Vec<Interval<T>>> = vec![Vec::new(); top + 1];
    for &(b, d) in &pairing.pairs {
        let (cb, cd) = (&fc.cells[b], &fc.cells[d]);
        per_dim[cb.dim].push(Interval::new(fc.key(cb.filtration), fc.key(cd.filtration))?);
    }
    for &e in &pairing.essential {
        let c = &fc.cells[e];
        per_dim[c.dim].push(Interval::essential(fc.key(c.filtration))?);
    }
    Ok(per_dim
        .into_iter()
        .enumerate()
        .map(|(d, ivs)| (d, Barcode::from_intervals(d, ivs)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cell(dim: usize, f: f64, boundary: &[usize]) -> Cell<f64> {
        Cell {
            dim,
            filtration: f,
            boundary: boundary.to_vec(),
        }
    }

    #[test]
    fn hollow_triangle_has_essential_loop() {
        let fc = FilteredComplex::new(vec![
            cell(0, 0.0, &[]),
            cell(0, 0.0, &[]),
            cell(0, 0.0, &[]),
            cell(1, 1.0, &[0, 1]),
            cell(1, 2.0, &[1, 2]),
            cell(1, 3.0, &[0, 2]),
        ]);
        let bars = compute_persistence(&fc).unwrap();
        assert_eq!(bars[&0].len(), 3);
        assert_eq!(
            bars[&0],
            Barcode::from_pairs(0, [(0.0, 1.0), (0.0, 2.0), (0.0, f64::INFINITY)]).unwrap()
        );
        assert_eq!(bars[&1], Barcode::from_pairs(1, [(3.0, f64::INFINITY)]).unwrap());
    }

    #[test]
    fn structural_errors() {
        let bad_dim = FilteredComplex::new(vec![cell(0, 0.0, &[]), cell(2, 1.0, &[0])]);
        assert!(matches!(reduce(&bad_dim), Err(Error::Structure(_))));
        let late_face = FilteredComplex::new(vec![
            cell(0, 2.0, &[]),
            cell(0, 0.0, &[]),
            cell(1, 1.0, &[0, 1]),
        ]);
        assert!(matches!(reduce(&late_face), Err(Error::Structure(_))));
        let missing = FilteredComplex::new(vec![cell(0, 0.0, &[]), cell(1, 1.0, &[0, 7])]);
        assert!(matches!(reduce(&missing), Err(Error::Structure(_))));
        let unsorted = FilteredComplex::new(vec![
            cell(0, 0.0, &[]),
            cell(0, 0.0, &[]),
            cell(1, 1.0, &[1, 0]),
        ]);
        assert!(matches!(reduce(&unsorted), Err(Error::Structure(_))));
    }

    #[test]
    fn pairs_and_essentials_cover_all_cells() {
        let fc = FilteredComplex::new(vec![
            cell(0, 0.0, &[]),
            cell(0, 0.0, &[]),
            cell(0, 0.0, &[]),
            cell(1, 1.0, &[0, 1]),
            cell(1, 1.0, &[1, 2]),
            cell(1, 1.0, &[0, 2]),
            cell(2, 1.0, &[3, 4, 5]),
        ]);
        let p = reduce(&fc).unwrap();
        assert_eq!(2 * p.pairs.len() + p.essential.len(), fc.len());
        let bars = compute_persistence(&fc).unwrap();
        assert!(bars[&1].normalize(Default::default()).unwrap().is_empty());
    }

    #[test]
    fn decreasing_order_reports_negated_values() {
        let fc = FilteredComplex {
            cells: vec![cell(0, 3.0, &[]), cell(0, 1.0, &[]), cell(1, 1.0, &[0, 1])],
            order: FiltrationOrder::Decreasing,
        };
        let bars = compute_persistence(&fc).unwrap();
        assert_eq!(
            bars[&0],
            Barcode::from_pairs(0, [(-3.0, f64::INFINITY), (-1.0, -1.0)]).unwrap()
        );
    }
}
