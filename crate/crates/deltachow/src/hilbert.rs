//! Hilbert-series numerator of a monomial ideal, by pivot splitting.
//!
//! For leading terms of a degrevlex basis this yields the Hilbert polynomial
//! data of the homogenized ideal: homogenizing a degrevlex basis with a fresh
//! last variable changes neither the leading monomials nor the numerator.

type IntPoly = Vec<i128>;

fn poly_mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add_shifted(a: &mut IntPoly, b: &IntPoly, shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (j, y) in b.iter().enumerate() {
        a[j + shift] += y;
    }
}

fn minimalize(mut gens: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    gens.sort_by_key(|g| g.iter().map(|&e| e as u64).sum::<u64>());
    let mut out: Vec<Vec<u32>> = Vec::new();
    'next: for g in gens {
        for m in &out {
            if m.iter().zip(&g).all(|(a, b)| a <= b) {
                continue 'next;
            }
        }
        out.push(g);
    }
    out
}

/// Numerator `Q(t)` of the Hilbert series `Q(t) / (1-t)^n` of `k[x]/(gens)`.
pub fn hilbert_numerator(gens: &[Vec<u32>]) -> IntPoly {
    numerator(minimalize(gens.to_vec()))
}

fn numerator(gens: Vec<Vec<u32>>) -> IntPoly {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return vec![0];
    }

    let nvars = gens[0].len();
    // Pivot on the most shared variable; if none is shared the generators are
    // pairwise coprime and the numerator splits as a product.
    let mut best_var = 0;
    let mut best_count = 0;
    for v in 0..nvars {
        let count = gens.iter().filter(|g| g[v] > 0).count();
        if count > best_count {
            best_count = count;
            best_var = v;
        }
    }
    if best_count <= 1 {
        let mut out = vec![1];
        for g in &gens {
            let d: usize = g.iter().map(|&e| e as usize).sum();
            let mut factor = vec![0i128; d + 1];
            factor[0] = 1;
            factor[d] = -1;
            out = poly_mul(&out, &factor);
        }
        return out;
    }

    // Split at x_v: Q(I) = Q(I + (x_v)) + t * Q(I : x_v)
    let mut plus: Vec<Vec<u32>> = gens.iter().filter(|g| g[best_var] == 0).cloned().collect();
    let mut pivot = vec![0u32; nvars];
    pivot[best_var] = 1;
    plus.push(pivot);

    let colon: Vec<Vec<u32>> = gens
        .iter()
        .map(|g| {
            let mut h = g.clone();
            h[best_var] = h[best_var].saturating_sub(1);
            h
        })
        .collect();

    let mut out = numerator(minimalize(plus));
    let colon_num = numerator(minimalize(colon));
    poly_add_shifted(&mut out, &colon_num, 1);
    out
}

/// Strip all factors of `(1-t)` from `q`; returns `(p, s)` with
/// `q = (1-t)^s p` and `p(1) != 0`.
pub fn strip_one_minus_t(mut q: IntPoly) -> (IntPoly, usize) {
    let mut s = 0;
    loop {
        while q.last() == Some(&0) {
            q.pop();
        }
        if q.is_empty() {
            return (vec![0], s);
        }
        if q.iter().sum::<i128>() != 0 {
            return (q, s);
        }
        // synthetic division by (1 - t): q = (1-t) r with r_i = q_i + r_{i-1}
        let mut r = vec![0i128; q.len() - 1];
        let mut carry = 0i128;
        for i in 0..q.len() - 1 {
            carry += q[i];
            r[i] = carry;
        }
        q = r;
        s += 1;
    }
}

/// Affine Krull dimension and projective-closure degree of `k[x_1..x_n]/I`
/// from the leading monomials of a degrevlex Gröbner basis of `I`.
pub fn dimension_and_degree(leading: &[Vec<u32>], nvars: usize) -> (usize, u64) {
    if leading.is_empty() {
        return (nvars, 1);
    }
    let q = hilbert_numerator(leading);
    let (p, s) = strip_one_minus_t(q);
    let degree: i128 = p.iter().sum();
    debug_assert!(degree > 0, "degree must be positive for a proper ideal");
    (nvars - s, degree as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_hypersurface() {
        // LT = y^2 y' in 2 vars: numerator 1 - t^3, dim 1, degree 3
        let (dim, deg) = dimension_and_degree(&[vec![2, 1]], 2);
        assert_eq!((dim, deg), (1, 3));
    }

    #[test]
    fn linear_ideal() {
        // three coordinate hyperplanes in 6 vars
        let lts = vec![
            vec![1, 0, 0, 0, 0, 0],
            vec![0, 1, 0, 0, 0, 0],
            vec![0, 0, 1, 0, 0, 0],
        ];
        assert_eq!(dimension_and_degree(&lts, 6), (3, 1));
    }

    #[test]
    fn zero_ideal_is_whole_space() {
        assert_eq!(dimension_and_degree(&[], 4), (4, 1));
    }

    #[test]
    fn point_in_plane() {
        assert_eq!(dimension_and_degree(&[vec![1, 0], vec![0, 1]], 2), (0, 1));
    }

    #[test]
    fn mixed_dimension_components() {
        // (xy, xz) in 3 vars: components {x=0} (dim 2) and {y=z=0} (dim 1);
        // the Hilbert data sees the top-dimensional part: dim 2, degree 1.
        let lts = vec![vec![1, 1, 0], vec![1, 0, 1]];
        assert_eq!(dimension_and_degree(&lts, 3), (2, 1));
    }

    #[test]
    fn shared_variable_split() {
        // (x^2, xy) in 2 vars: Q = 1 - t^2 - t^2(1 - t) = 1 - 2t^2 + t^3
        let q = hilbert_numerator(&[vec![2, 0], vec![1, 1]]);
        // normalize trailing zeros
        let mut q = q;
        while q.last() == Some(&0) {
            q.pop();
        }
        assert_eq!(q, vec![1, 0, -2, 1]);
        // dim: strip (1-t) once -> p = 1 + t - t^2? p(1) = 1: dim = 2 - 1 = 1, deg 1
        assert_eq!(dimension_and_degree(&[vec![2, 0], vec![1, 1]], 2), (1, 1));
    }
}
