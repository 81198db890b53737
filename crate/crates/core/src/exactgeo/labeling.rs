use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lattice::PicardLattice;
use crate::linalg::IntMatrix;
use crate::weyl::LatticeAutomorphism;

/// Names of the sixteen lines in the standard order.
pub fn standard_names() -> Vec<String> {
    let x = PicardLattice::del_pezzo(4).expect("degree 4");
    x.standard_lines()
        .expect("degree 4")
        .iter()
        .map(|c| x.name(c))
        .collect()
}

/// Incidence of the standard lines: 1 when the classes meet.
pub fn standard_incidence() -> Vec<Vec<u8>> {
    let x = PicardLattice::del_pezzo(4).expect("degree 4");
    let lines = x.standard_lines().expect("degree 4");
    lines
        .iter()
        .map(|a| lines.iter().map(|b| u8::from(x.dot(a, b) == 1)).collect())
        .collect()
}

/// `labels[i]` is the standard index assigned to line `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling {
    pub labels: Vec<usize>,
    pub count: usize,
}

impl Labeling {
    pub fn names(&self) -> Vec<String> {
        let n = standard_names();
        self.labels.iter().map(|&i| n[i].clone()).collect()
    }

    /// Line carrying the standard label `std`.
    pub fn line_of(&self, std: usize) -> usize {
        self.labels
            .iter()
            .position(|&l| l == std)
            .expect("labeling is a bijection")
    }
}

/// Every labeling matching the standard table, in lexicographic order.
pub fn all_labelings(incidence: &[Vec<u8>]) -> Result<Vec<Vec<usize>>> {
    if incidence.len() != 16 || incidence.iter().any(|r| r.len() != 16) {
        return Err(Error::DimensionMismatch {
            expected: 16,
            found: incidence.len(),
        });
    }
    let table = standard_incidence();
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::with_capacity(16);
    let mut used = [false; 16];
    search(incidence, &table, &mut cur, &mut used, &mut out);
    Ok(out)
}

fn search(
    inc: &[Vec<u8>],
    table: &[Vec<u8>],
    cur: &mut Vec<usize>,
    used: &mut [bool; 16],
    out: &mut Vec<Vec<usize>>,
) {
    let i = cur.len();
    if i == 16 {
        out.push(cur.clone());
        return;
    }
    for cand in 0..16 {
        if used[cand] || (0..i).any(|j| inc[i][j] != table[cand][cur[j]]) {
            continue;
        }
        used[cand] = true;
        cur.push(cand);
        search(inc, table, cur, used, out);
        cur.pop();
        used[cand] = false;
    }
}

/// The lexicographically least labeling and the number of labelings.
pub fn label_lines(incidence: &[Vec<u8>]) -> Result<Labeling> {
    let all = all_labelings(incidence)?;
    let first = all.first().ok_or(Error::NoLabeling)?.clone();
    Ok(Labeling {
        labels: first,
        count: all.len(),
    })
}

/// Lattice automorphism sending the class of line `i` to that of line `perm[i]`.
pub fn lattice_element(labels: &[usize], perm: &[usize]) -> Result<LatticeAutomorphism> {
    let x = PicardLattice::del_pezzo(4)?;
    let std = x.standard_lines()?;
    let line_of = |s: usize| labels.iter().position(|&l| l == s).expect("bijection");
    let image = |s: usize| std[labels[perm[line_of(s)]]].clone();
    // basis L, E1..E5 with L = L12 + E1 + E2
    let mut cols: Vec<Vec<i64>> = Vec::with_capacity(6);
    cols.push(image(5).add(&image(0)).add(&image(1)).0);
    for i in 0..5 {
        cols.push(image(i).0);
    }
    let g = LatticeAutomorphism {
        matrix: IntMatrix::from_columns(&cols),
    };
    for (i, &p) in perm.iter().enumerate() {
        if g.apply(&std[labels[i]]) != std[labels[p]] {
            return Err(Error::NotInGroup(format!("line permutation {perm:?}")));
        }
    }
    if !g.is_isometry_of(&x) {
        return Err(Error::NotInGroup(format!("line permutation {perm:?}")));
    }
    Ok(g)
}

/// The circulant graph `C_16(1, 2, 8)`: five-regular but with triangles, so not a degree-4 line graph.
pub fn circulant_control() -> Vec<Vec<u8>> {
    let mut m = vec![vec![0u8; 16]; 16];
    for i in 0..16 {
        for d in [1usize, 2, 8, 14, 15] {
            m[i][(i + d) % 16] = 1;
        }
    }
    m
}
