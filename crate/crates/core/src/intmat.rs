//! Small non-negative integer matrices. Rows are Parikh vectors of letter
//! images, so `m[a][b] = |image(a)|_b`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{parse_err, Error, Result};

/// `[[p0, q0], [p1, q1]]`: row 0 counts the letters of the image of 0, row 1
/// those of the image of 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix2 {
    pub p0: u64,
    pub q0: u64,
    pub p1: u64,
    pub q1: u64,
}

impl IntMatrix2 {
    pub const IDENTITY: IntMatrix2 = IntMatrix2 { p0: 1, q0: 0, p1: 0, q1: 1 };

    pub fn new(p0: u64, q0: u64, p1: u64, q1: u64) -> Self {
        IntMatrix2 { p0, q0, p1, q1 }
    }

    pub fn det(&self) -> i64 {
        (self.p0 * self.q1) as i64 - (self.q0 * self.p1) as i64
    }

    /// Sum of all entries.
    pub fn norm(&self) -> u64 {
        self.p0 + self.q0 + self.p1 + self.q1
    }

    /// Number of zeros in the image of 01.
    pub fn p(&self) -> u64 {
        self.p0 + self.p1
    }

    /// Number of ones in the image of 01.
    pub fn q(&self) -> u64 {
        self.q0 + self.q1
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs() == 1
    }

    /// Returns `det` when it is +1 or -1.
    pub fn unimodular_det(&self) -> Result<i64> {
        match self.det() {
            d @ (1 | -1) => Ok(d),
            det => Err(Error::NotUnimodular { det }),
        }
    }

    pub fn mul(&self, rhs: &IntMatrix2) -> IntMatrix2 {
        IntMatrix2 {
            p0: self.p0 * rhs.p0 + self.q0 * rhs.p1,
            q0: self.p0 * rhs.q0 + self.q0 * rhs.q1,
            p1: self.p1 * rhs.p0 + self.q1 * rhs.p1,
            q1: self.p1 * rhs.q0 + self.q1 * rhs.q1,
        }
    }

    pub fn rows(&self) -> [[u64; 2]; 2] {
        [[self.p0, self.q0], [self.p1, self.q1]]
    }
}

impl fmt::Display for IntMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{};{},{}", self.p0, self.q0, self.p1, self.q1)
    }
}

impl Serialize for IntMatrix2 {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn parse_rows<const N: usize>(s: &str) -> Result<[[u64; N]; N]> {
    let rows: Vec<&str> = s.split(';').collect();
    if rows.len() != N {
        return Err(parse_err(s, format!("expected {N} rows separated by ';'")));
    }
    let mut out = [[0u64; N]; N];
    for (r, row) in rows.iter().enumerate() {
        let cells: Vec<&str> = row.split(',').collect();
        if cells.len() != N {
            return Err(parse_err(*row, format!("expected {N} entries separated by ','")));
        }
        for (c, cell) in cells.iter().enumerate() {
            let cell = cell.trim();
            out[r][c] = cell
                .parse()
                .map_err(|_| parse_err(cell, "expected a non-negative integer"))?;
        }
    }
    Ok(out)
}

/// Format `p0,q0;p1,q1`.
impl FromStr for IntMatrix2 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let [[p0, q0], [p1, q1]] = parse_rows::<2>(s.trim())?;
        Ok(IntMatrix2 { p0, q0, p1, q1 })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix3 {
    pub rows: [[u64; 3]; 3],
}

impl IntMatrix3 {
    pub const IDENTITY: IntMatrix3 = IntMatrix3 {
        rows: [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
    };

    pub fn new(rows: [[u64; 3]; 3]) -> Self {
        IntMatrix3 { rows }
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.rows[r][c]
    }

    pub fn to_signed(&self) -> [[i64; 3]; 3] {
        self.rows.map(|row| row.map(|x| x as i64))
    }

    pub fn row_sums(&self) -> [u64; 3] {
        self.rows.map(|row| row.iter().sum())
    }
}

pub(crate) fn mul3(x: &[[i64; 3]; 3], y: &[[i64; 3]; 3]) -> [[i64; 3]; 3] {
    let mut out = [[0i64; 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = (0..3).map(|k| x[i][k] * y[k][j]).sum();
        }
    }
    out
}

pub(crate) fn transpose3(x: &[[i64; 3]; 3]) -> [[i64; 3]; 3] {
    let mut out = [[0i64; 3]; 3];
    for (i, row) in x.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            out[j][i] = v;
        }
    }
    out
}

impl fmt::Display for IntMatrix3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| format!("{},{},{}", r[0], r[1], r[2]))
            .collect();
        f.write_str(&rows.join(";"))
    }
}

impl Serialize for IntMatrix3 {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Format `r00,r01,r02;r10,r11,r12;r20,r21,r22`.
impl FromStr for IntMatrix3 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(IntMatrix3 {
            rows: parse_rows::<3>(s.trim())?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_norm_and_product() {
        let a: IntMatrix2 = "2,1;3,2".parse().unwrap();
        assert_eq!((a.det(), a.norm(), a.p(), a.q()), (1, 8, 5, 3));
        assert_eq!(a.mul(&IntMatrix2::IDENTITY), a);
        let swap: IntMatrix2 = "0,1;1,0".parse().unwrap();
        assert_eq!(swap.det(), -1);
        assert_eq!(a.mul(&swap), IntMatrix2::new(1, 2, 2, 3));
        assert_eq!(IntMatrix2::new(1, 1, 1, 1).unimodular_det(), Err(Error::NotUnimodular { det: 0 }));
    }

    #[test]
    fn text_formats() {
        let b: IntMatrix3 = "1,1,0; 2,3,0; 2,1,1".parse().unwrap();
        assert_eq!(b.to_string(), "1,1,0;2,3,0;2,1,1");
        assert_eq!(b.row_sums(), [2, 5, 4]);
        assert!("1,2;3".parse::<IntMatrix2>().is_err());
        assert!("1,2;3,-4".parse::<IntMatrix2>().is_err());
        assert!("1,2,3;4,5,6".parse::<IntMatrix3>().is_err());
    }
}
