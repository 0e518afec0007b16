//! Dense linear algebra over `F_p` with `u64` entries.

/// `a^-1 mod p` for `a != 0`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "{a} is not invertible mod {p}");
    t.rem_euclid(p as i128) as u64
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else {
            continue;
        };
        rows.swap(r, k);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        for k in 0..rows.len() {
            if k != r && rows[k][c] != 0 {
                let f = rows[k][c];
                for j in 0..ncols {
                    rows[k][j] = (rows[k][j] + p * p - f * rows[r][j] % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(vectors: &[Vec<u64>], p: u64) -> usize {
    let mut m = vectors.to_vec();
    rref(&mut m, p).len()
}

/// Canonical basis (reduced echelon rows) of the span.
pub fn span_basis(vectors: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let mut m: Vec<Vec<u64>> = vectors.iter().filter(|v| v.iter().any(|&x| x != 0)).cloned().collect();
    rref(&mut m, p);
    m
}

/// Coordinates of `v` in terms of `basis` (linearly independent rows), if `v` lies in the span.
pub fn solve_in_span(basis: &[Vec<u64>], v: &[u64], p: u64) -> Option<Vec<u64>> {
    let k = basis.len();
    let n = v.len();
    // Columns are basis vectors; augment with v and reduce the transposed system.
    let mut rows: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let mut row: Vec<u64> = basis.iter().map(|b| b[i]).collect();
            row.push(v[i]);
            row
        })
        .collect();
    let pivots = rref(&mut rows, p);
    if pivots.contains(&k) {
        return None;
    }
    let mut x = vec![0u64; k];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = rows[r][k];
    }
    Some(x)
}

/// Inverse of a square matrix given by rows, if invertible.
pub fn invert(m: &[Vec<u64>], p: u64) -> Option<Vec<Vec<u64>>> {
    let n = m.len();
    let mut aug: Vec<Vec<u64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u64::from(i == j)));
            r
        })
        .collect();
    let pivots = rref(&mut aug, p);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// `v · M` for a row vector and a matrix given by rows.
pub fn vec_mat(v: &[u64], m: &[Vec<u64>], p: u64) -> Vec<u64> {
    let cols = m.first().map_or(0, Vec::len);
    let mut out = vec![0u64; cols];
    for (i, &c) in v.iter().enumerate() {
        if c == 0 {
            continue;
        }
        for (j, &x) in m[i].iter().enumerate() {
            out[j] = (out[j] + c * x) % p;
        }
    }
    out
}
