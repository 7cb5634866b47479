//! Eigenvalues of a small real upper-Hessenberg matrix by the Francis
//! double-shift QR iteration (eigenvalues only, no vectors).

/// Returns `(re, im)` pairs, or `None` if some eigenvalue fails to deflate.
/// `h` is row-major `n×n`; entries below the subdiagonal are ignored.
pub(crate) fn eigenvalues(h: &[f64], n: usize) -> Option<Vec<(f64, f64)>> {
    debug_assert_eq!(h.len(), n * n);
    // 1-based working copy keeps the index arithmetic readable.
    let dim = n + 1;
    let mut a = vec![0.0; dim * dim];
    for i in 0..n {
        for j in 0..n {
            if i <= j + 1 {
                a[(i + 1) * dim + (j + 1)] = h[i * n + j];
            }
        }
    }
    macro_rules! a {
        ($i:expr, $j:expr) => {
            a[($i) * dim + ($j)]
        };
    }

    let mut wr = vec![0.0; dim];
    let mut wi = vec![0.0; dim];
    let mut anorm = 0.0;
    for i in 1..=n {
        for j in i.saturating_sub(1).max(1)..=n {
            anorm += a!(i, j).abs();
        }
    }

    let mut nn = n;
    let mut t = 0.0;
    while nn >= 1 {
        let mut its = 0;
        loop {
            // Look for a single small subdiagonal element.
            let mut l = nn;
            while l >= 2 {
                let mut s = a!(l - 1, l - 1).abs() + a!(l, l).abs();
                if s == 0.0 {
                    s = anorm;
                }
                if a!(l, l - 1).abs() + s == s {
                    a!(l, l - 1) = 0.0;
                    break;
                }
                l -= 1;
            }
            let mut x = a!(nn, nn);
            if l == nn {
                // One root found.
                wr[nn] = x + t;
                wi[nn] = 0.0;
                nn -= 1;
                break;
            }
            let mut y = a!(nn - 1, nn - 1);
            let mut w = a!(nn, nn - 1) * a!(nn - 1, nn);
            if l == nn - 1 {
                // Two roots found.
                let p = 0.5 * (y - x);
                let q = p * p + w;
                let mut z = q.abs().sqrt();
                x += t;
                if q >= 0.0 {
                    z = p + z.copysign(p);
                    wr[nn - 1] = x + z;
                    wr[nn] = x + z;
                    if z != 0.0 {
                        wr[nn] = x - w / z;
                    }
                    wi[nn - 1] = 0.0;
                    wi[nn] = 0.0;
                } else {
                    wr[nn - 1] = x + p;
                    wr[nn] = x + p;
                    wi[nn - 1] = -z;
                    wi[nn] = z;
                }
                nn = nn.saturating_sub(2);
                break;
            }

            if its == 60 {
                return None;
            }
            if its > 0 && its % 10 == 0 {
                // Exceptional shift.
                t += x;
                for i in 1..=nn {
                    a!(i, i) -= x;
                }
                let s = a!(nn, nn - 1).abs() + a!(nn - 1, nn - 2).abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            its += 1;

            // Form shift and look for two consecutive small subdiagonal elements.
            let mut m = nn - 2;
            let (mut p, mut q, mut r);
            loop {
                let z = a!(m, m);
                let rr = x - z;
                let ss = y - z;
                p = (rr * ss - w) / a!(m + 1, m) + a!(m, m + 1);
                q = a!(m + 1, m + 1) - z - rr - ss;
                r = a!(m + 2, m + 1);
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = a!(m, m - 1).abs() * (q.abs() + r.abs());
                let v = p.abs() * (a!(m - 1, m - 1).abs() + z.abs() + a!(m + 1, m + 1).abs());
                if u + v == v {
                    break;
                }
                m -= 1;
            }
            for i in (m + 2)..=nn {
                a!(i, i - 2) = 0.0;
                if i != m + 2 {
                    a!(i, i - 3) = 0.0;
                }
            }
            // Double QR step on rows l..nn and columns m..nn.
            let mut k = m;
            while k < nn {
                if k != m {
                    p = a!(k, k - 1);
                    q = a!(k + 1, k - 1);
                    r = 0.0;
                    if k != nn - 1 {
                        r = a!(k + 2, k - 1);
                    }
                    x = p.abs() + q.abs() + r.abs();
                    if x != 0.0 {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                let s = (p * p + q * q + r * r).sqrt().copysign(p);
                if s != 0.0 {
                    if k == m {
                        if l != m {
                            a!(k, k - 1) = -a!(k, k - 1);
                        }
                    } else {
                        a!(k, k - 1) = -s * x;
                    }
                    p += s;
                    x = p / s;
                    y = q / s;
                    let z = r / s;
                    q /= p;
                    r /= p;
                    for j in k..=nn {
                        let mut pp = a!(k, j) + q * a!(k + 1, j);
                        if k != nn - 1 {
                            pp += r * a!(k + 2, j);
                            a!(k + 2, j) -= pp * z;
                        }
                        a!(k + 1, j) -= pp * y;
                        a!(k, j) -= pp * x;
                    }
                    let mmin = if nn < k + 3 { nn } else { k + 3 };
                    for i in l..=mmin {
                        let mut pp = x * a!(i, k) + y * a!(i, k + 1);
                        if k != nn - 1 {
                            pp += z * a!(i, k + 2);
                            a!(i, k + 2) -= pp * r;
                        }
                        a!(i, k + 1) -= pp * q;
                        a!(i, k) -= pp;
                    }
                }
                k += 1;
            }
            if l >= nn - 1 {
                break;
            }
        }
    }
    Some((1..=n).map(|i| (wr[i], wi[i])).collect())
}
