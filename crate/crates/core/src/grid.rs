//! Uniform Cartesian grids of rotors.
//!
//! Storage and the CSV layout are x-fastest: the linear index of `(i, j, k)`
//! is `i + nx (j + ny k)`. The CSV form is
//!
//! ```text
//! # rotor_grid nx=4 ny=4 nz=4 h=... ox=... oy=... oz=...
//! alpha,beta1,beta2,beta3
//! <one row per cell>
//! ```

use std::io::{BufRead, Write};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::RotorField;
use crate::linalg::Vec3;
use crate::scalar::Scalar;
use crate::so3::Rotor;
use crate::textio::{fmt_num, header_num, parse_header, parse_num};

#[derive(Debug, Clone, PartialEq)]
pub struct RotorGrid<T> {
    dims: [usize; 3],
    spacing: T,
    origin: Vec3<T>,
    values: Vec<Rotor<T>>,
}

fn unit_tolerance<T: Scalar>() -> T {
    T::lit(1e-12).max(T::epsilon() * T::lit(16.0))
}

impl<T: Scalar> RotorGrid<T> {
    pub fn new(dims: [usize; 3], spacing: T, origin: Vec3<T>, values: Vec<Rotor<T>>) -> Result<Self> {
        if dims.contains(&0) {
            return Err(Error::Config(format!("grid dims must be positive, got {dims:?}")));
        }
        if !(spacing > T::zero()) {
            return Err(Error::Config(format!("grid spacing must be positive, got {spacing}")));
        }
        let n = dims[0] * dims[1] * dims[2];
        if values.len() != n {
            return Err(Error::Config(format!(
                "grid of dims {dims:?} needs {n} values, got {}",
                values.len()
            )));
        }
        let tol = unit_tolerance::<T>();
        if let Some(pos) = values.iter().position(|r| !(r.constraint_defect() <= tol)) {
            return Err(Error::Domain(format!(
                "rotor at linear index {pos} violates alpha^2 + beta^2 = 1"
            )));
        }
        Ok(RotorGrid {
            dims,
            spacing,
            origin,
            values,
        })
    }

    /// Samples `field` at time `t` on the cell positions `origin + h·(i, j, k)`.
    pub fn sample<F: RotorField<T>>(field: &F, dims: [usize; 3], spacing: T, origin: Vec3<T>, t: T) -> Result<Self> {
        let n = dims[0] * dims[1] * dims[2];
        let values: Vec<Rotor<T>> = (0..n)
            .into_par_iter()
            .map(|lin| {
                let idx = [lin % dims[0], (lin / dims[0]) % dims[1], lin / (dims[0] * dims[1])];
                field.rotor(&position_of(origin, spacing, idx), t)
            })
            .collect();
        Self::new(dims, spacing, origin, values)
    }

    /// `n³` cells centred on the coordinate origin.
    pub fn sample_centered<F: RotorField<T>>(field: &F, n: usize, spacing: T, t: T) -> Result<Self> {
        let half = spacing * T::from_usize_lossy(n.saturating_sub(1)) * T::half();
        let origin = Vec3::new(-half, -half, -half);
        Self::sample(field, [n, n, n], spacing, origin, t)
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn spacing(&self) -> T {
        self.spacing
    }

    pub fn origin(&self) -> Vec3<T> {
        self.origin
    }

    pub fn values(&self) -> &[Rotor<T>] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn linear_index(&self, idx: [usize; 3]) -> usize {
        idx[0] + self.dims[0] * (idx[1] + self.dims[1] * idx[2])
    }

    pub fn multi_index(&self, lin: usize) -> [usize; 3] {
        let [nx, ny, _] = self.dims;
        [lin % nx, (lin / nx) % ny, lin / (nx * ny)]
    }

    pub fn position(&self, idx: [usize; 3]) -> Vec3<T> {
        position_of(self.origin, self.spacing, idx)
    }

    pub fn get(&self, idx: [usize; 3]) -> &Rotor<T> {
        &self.values[self.linear_index(idx)]
    }

    /// Neighbour of `idx` displaced by `offset` cells along `axis`. The caller
    /// guarantees the result is inside the grid.
    pub(crate) fn shifted(idx: [usize; 3], axis: usize, offset: isize) -> [usize; 3] {
        let mut out = idx;
        out[axis] = (idx[axis] as isize + offset) as usize;
        out
    }

    /// Errors unless `idx` is at least `margin` cells from every face.
    pub fn check_interior(&self, idx: [usize; 3], margin: usize) -> Result<()> {
        let ok = (0..3).all(|a| idx[a] >= margin && idx[a] + margin < self.dims[a]);
        if ok {
            Ok(())
        } else {
            Err(Error::Range {
                index: idx,
                dims: self.dims,
                margin,
            })
        }
    }

    /// Linear indices of all cells at least `margin` cells from every face.
    pub fn interior_indices(&self, margin: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&lin| self.check_interior(self.multi_index(lin), margin).is_ok())
            .collect()
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        let [nx, ny, nz] = self.dims;
        writeln!(
            out,
            "# rotor_grid nx={nx} ny={ny} nz={nz} h={} ox={} oy={} oz={}",
            fmt_num(self.spacing),
            fmt_num(self.origin[0]),
            fmt_num(self.origin[1]),
            fmt_num(self.origin[2])
        )?;
        writeln!(out, "alpha,beta1,beta2,beta3")?;
        for r in &self.values {
            writeln!(
                out,
                "{},{},{},{}",
                fmt_num(r.alpha),
                fmt_num(r.beta[0]),
                fmt_num(r.beta[1]),
                fmt_num(r.beta[2])
            )?;
        }
        Ok(())
    }

    pub fn read_csv<R: BufRead>(input: R) -> Result<Self> {
        let mut lines = input.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty rotor grid file".into()))??;
        let map = parse_header(&header, "rotor_grid")?;
        let dim = |k: &str| -> Result<usize> {
            map.get(k)
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad or missing {k:?} in header")))
        };
        let dims = [dim("nx")?, dim("ny")?, dim("nz")?];
        let spacing = header_num(&map, "h")?;
        let origin = Vec3::new(header_num(&map, "ox")?, header_num(&map, "oy")?, header_num(&map, "oz")?);
        let columns = lines
            .next()
            .ok_or_else(|| Error::Parse("missing column line".into()))??;
        if columns.trim() != "alpha,beta1,beta2,beta3" {
            return Err(Error::Parse(format!("unexpected columns {columns:?}")));
        }
        let mut values = Vec::with_capacity(dims.iter().product());
        for line in lines {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let f: Vec<T> = line.split(',').map(parse_num).collect::<Result<_>>()?;
            if f.len() != 4 {
                return Err(Error::Parse(format!("expected 4 columns, got {line:?}")));
            }
            values.push(Rotor {
                alpha: f[0],
                beta: Vec3::new(f[1], f[2], f[3]),
            });
        }
        Self::new(dims, spacing, origin, values)
    }
}

fn position_of<T: Scalar>(origin: Vec3<T>, h: T, idx: [usize; 3]) -> Vec3<T> {
    Vec3::from_fn(|a| origin[a] + h * T::from_usize_lossy(idx[a]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::BumpField;

    #[test]
    fn csv_round_trip_is_exact() {
        let f = BumpField::<f64>::random(9, 3, 1.0);
        let g = RotorGrid::sample_centered(&f, 5, 0.37, 0.0).unwrap();
        let mut buf = Vec::new();
        g.write_csv(&mut buf).unwrap();
        let back = RotorGrid::<f64>::read_csv(buf.as_slice()).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn x_fastest_ordering() {
        let g = RotorGrid::sample(
            &crate::field::ConstantField(Rotor::<f64>::identity()),
            [2, 3, 4],
            1.0,
            Vec3::zeros(),
            0.0,
        )
        .unwrap();
        assert_eq!(g.linear_index([1, 0, 0]), 1);
        assert_eq!(g.linear_index([0, 1, 0]), 2);
        assert_eq!(g.linear_index([0, 0, 1]), 6);
        assert_eq!(g.multi_index(g.linear_index([1, 2, 3])), [1, 2, 3]);
        assert_eq!(g.position([1, 2, 3]), Vec3::new(1.0, 2.0, 3.0));
    }

    #[test]
    fn rejects_non_unit_rotors() {
        let bad = vec![
            Rotor {
                alpha: 1.0,
                beta: Vec3::new(0.1, 0.0, 0.0)
            };
            8
        ];
        assert!(RotorGrid::new([2, 2, 2], 1.0, Vec3::zeros(), bad).is_err());
    }

    #[test]
    fn interior_checks() {
        let g = RotorGrid::sample_centered(&crate::field::ConstantField(Rotor::<f64>::identity()), 3, 1.0, 0.0).unwrap();
        assert!(g.check_interior([1, 1, 1], 1).is_ok());
        assert!(g.check_interior([0, 0, 0], 1).is_err());
        assert_eq!(g.interior_indices(1), vec![13]);
    }
}
