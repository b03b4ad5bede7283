//! Storage helpers for totally symmetric 3-tensors on a 3-dimensional space.
//!
//! A symmetric tensor is stored as its 10 independent components in the
//! lexicographic order `000, 001, 002, 011, 012, 022, 111, 112, 122, 222`
//! (for an ONB: `ttt, ttv, ttw, tvv, tvw, tww, vvv, vvw, vww, www`).

use nalgebra::{Matrix3, Vector3};

/// Ten independent components of a symmetric 3-tensor.
pub type Sym3 = [f64; 10];

/// Sorted index triples in storage order.
pub const TRIPLES: [(usize, usize, usize); 10] = [
    (0, 0, 0),
    (0, 0, 1),
    (0, 0, 2),
    (0, 1, 1),
    (0, 1, 2),
    (0, 2, 2),
    (1, 1, 1),
    (1, 1, 2),
    (1, 2, 2),
    (2, 2, 2),
];

/// Storage slot of the (unordered) index triple `(i, j, k)`.
pub fn slot(i: usize, j: usize, k: usize) -> usize {
    let mut a = [i, j, k];
    a.sort_unstable();
    TRIPLES.iter().position(|&t| t == (a[0], a[1], a[2])).expect("indices < 3")
}

/// Dense `[i][j][k]` array of a symmetric tensor.
pub fn full(k: &Sym3) -> [[[f64; 3]; 3]; 3] {
    let mut f = [[[0.0; 3]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for l in 0..3 {
                f[i][j][l] = k[slot(i, j, l)];
            }
        }
    }
    f
}

/// Pullback `k'_{abc} = Σ k_{ijl} P_{ia} P_{jb} P_{lc}`.
///
/// With `P` the matrix whose columns are new basis vectors in old coordinates this
/// is the change of basis; with `P = L` it is the action `K ∘ L`.
pub fn pullback(k: &Sym3, p: &Matrix3<f64>) -> Sym3 {
    let f = full(k);
    // Contract one index at a time: O(3⁴) per stage.
    let mut t1 = [[[0.0; 3]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for c in 0..3 {
                let mut s = 0.0;
                for l in 0..3 {
                    s += f[i][j][l] * p[(l, c)];
                }
                t1[i][j][c] = s;
            }
        }
    }
    let mut t2 = [[[0.0; 3]; 3]; 3];
    for i in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                let mut s = 0.0;
                for j in 0..3 {
                    s += t1[i][j][c] * p[(j, b)];
                }
                t2[i][b][c] = s;
            }
        }
    }
    let mut out = [0.0; 10];
    for (n, &(a, b, c)) in TRIPLES.iter().enumerate() {
        let mut s = 0.0;
        for i in 0..3 {
            s += t2[i][b][c] * p[(i, a)];
        }
        out[n] = s;
    }
    out
}

/// Infinitesimal action of a Lie-algebra element `A`:
/// `(A·k)_{abc} = k(AX_a, X_b, X_c) + k(X_a, AX_b, X_c) + k(X_a, X_b, AX_c)`.
pub fn derivation(k: &Sym3, a: &Matrix3<f64>) -> Sym3 {
    let f = full(k);
    let mut out = [0.0; 10];
    for (n, &(p, q, r)) in TRIPLES.iter().enumerate() {
        let mut s = 0.0;
        for i in 0..3 {
            s += f[i][q][r] * a[(i, p)] + f[p][i][r] * a[(i, q)] + f[p][q][i] * a[(i, r)];
        }
        out[n] = s;
    }
    out
}

/// Matrix of `K_X` (columns `K(X, e_j)`), raising the last index with `ginv`.
pub fn k_matrix(k: &Sym3, x: &Vector3<f64>, ginv: &Matrix3<f64>) -> Matrix3<f64> {
    let f = full(k);
    // lowered[j][l] = Σ_i x_i k_{i j l}
    let mut low = Matrix3::zeros();
    for j in 0..3 {
        for l in 0..3 {
            let mut s = 0.0;
            for i in 0..3 {
                s += x[i] * f[i][j][l];
            }
            low[(l, j)] = s;
        }
    }
    ginv * low
}

/// `K(X, X)` with the free index raised by `ginv`.
pub fn k_xx(k: &Sym3, x: &Vector3<f64>, ginv: &Matrix3<f64>) -> Vector3<f64> {
    k_matrix(k, x, ginv) * x
}

/// `Σ_{jl} g^{jl} k_{i j l}` for each `i` (apolarity traces).
pub fn traces(k: &Sym3, ginv: &Matrix3<f64>) -> [f64; 3] {
    let f = full(k);
    let mut t = [0.0; 3];
    for (i, ti) in t.iter_mut().enumerate() {
        for j in 0..3 {
            for l in 0..3 {
                *ti += ginv[(j, l)] * f[i][j][l];
            }
        }
    }
    t
}

/// Full contraction `Σ k_{ijl} k_{abc} g^{ia} g^{jb} g^{lc}`.
pub fn norm_sq_metric(k: &Sym3, ginv: &Matrix3<f64>) -> f64 {
    let f = full(k);
    let raised = pullback(k, &ginv.transpose());
    let r = full(&raised);
    let mut s = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            for l in 0..3 {
                s += f[i][j][l] * r[i][j][l];
            }
        }
    }
    s
}

/// Max-norm of a component array.
pub fn amax(k: &Sym3) -> f64 {
    k.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
}

/// Euclidean norm over the 27 dense components.
pub fn dense_norm(k: &Sym3) -> f64 {
    let f = full(k);
    f.iter().flatten().flatten().map(|x| x * x).sum::<f64>().sqrt()
}

/// Componentwise difference.
pub fn sub(a: &Sym3, b: &Sym3) -> Sym3 {
    let mut o = [0.0; 10];
    for i in 0..10 {
        o[i] = a[i] - b[i];
    }
    o
}

/// Scalar multiple.
pub fn scale(a: &Sym3, s: f64) -> Sym3 {
    a.map(|x| x * s)
}
