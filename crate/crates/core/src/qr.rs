//! Thin Householder QR for tall matrices.

/// Factor the column-major `rows x cols` matrix `a` (`rows >= cols`) as
/// `a = q r`. Returns the orthonormal columns of `q`, column-major, with the
/// signs chosen so that the diagonal of `r` is nonnegative.
pub(crate) fn thin_q(mut a: Vec<f64>, rows: usize, cols: usize) -> Vec<f64> {
    debug_assert!(rows >= cols && a.len() == rows * cols);
    let mut reflectors: Vec<Option<Vec<f64>>> = Vec::with_capacity(cols);
    let mut diag = Vec::with_capacity(cols);

    for j in 0..cols {
        let col = &a[j * rows + j..(j + 1) * rows];
        let norm = col.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 {
            reflectors.push(None);
            diag.push(0.0);
            continue;
        }
        let alpha = if col[0] > 0.0 { -norm } else { norm };
        let mut v = col.to_vec();
        v[0] -= alpha;
        let vnorm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            reflectors.push(None);
            diag.push(col[0]);
            continue;
        }
        v.iter_mut().for_each(|x| *x /= vnorm);
        for c in j..cols {
            reflect(&v, &mut a[c * rows + j..(c + 1) * rows]);
        }
        reflectors.push(Some(v));
        diag.push(alpha);
    }

    let mut q = vec![0.0; rows * cols];
    for c in 0..cols {
        q[c * rows + c] = 1.0;
    }
    for j in (0..cols).rev() {
        if let Some(v) = &reflectors[j] {
            for c in 0..cols {
                reflect(v, &mut q[c * rows + j..(c + 1) * rows]);
            }
        }
    }
    for (c, &r) in diag.iter().enumerate() {
        if r < 0.0 {
            q[c * rows..(c + 1) * rows].iter_mut().for_each(|x| *x = -*x);
        }
    }
    q
}

fn reflect(v: &[f64], x: &mut [f64]) {
    let dot: f64 = v.iter().zip(x.iter()).map(|(a, b)| a * b).sum();
    for (xi, vi) in x.iter_mut().zip(v) {
        *xi -= 2.0 * dot * vi;
    }
}
