use super::{require_setup, ParameterArray, ParrayError};
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::ExactMatrix;

/// Outcome of the search for an invertible intertwiner.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GSearch {
    Found(ExactMatrix),
    /// No invertible element was found. `solution_dim` is the dimension of
    /// the space of (possibly singular) solutions; `pencil_exhausted` is set
    /// when that space was nonzero and every 0/1 combination tried was
    /// singular, so the negative answer is only as complete as that pencil.
    NotFound {
        solution_dim: usize,
        pencil_exhausted: bool,
    },
}

impl GSearch {
    pub fn found(&self) -> Option<&ExactMatrix> {
        match self {
            GSearch::Found(g) => Some(g),
            GSearch::NotFound { .. } => None,
        }
    }
}

/// Lower bidiagonal matrix with the given diagonal and 1 below it.
pub fn theta_lower(spec: FieldSpec, diag: &[FieldElement]) -> ExactMatrix {
    let mut m = ExactMatrix::diagonal(spec, diag);
    for i in 1..diag.len() {
        m.set(i, i - 1, FieldElement::one(spec));
    }
    m
}

/// Upper bidiagonal matrix with the given diagonal and superdiagonal.
pub fn varphi_upper(spec: FieldSpec, diag: &[FieldElement], sup: &[FieldElement]) -> ExactMatrix {
    let mut m = ExactMatrix::diagonal(spec, diag);
    for (i, x) in sup.iter().enumerate() {
        m.set(i, i + 1, x.clone());
    }
    m
}

/// Search for an invertible G with G^-1 L(θ) G = L(θ reversed) and
/// G^-1 U(θ*, φ) G = U(θ*, ϕ).
///
/// Every solution of L G = G L' is determined by its first column g_0 via
/// g_{j+1} = (L - θ_{d-j}) g_j, so the joint system is solved over the d+1
/// coordinates of g_0 rather than all (d+1)^2 entries of G.
pub fn find_g(pa: &ParameterArray) -> Result<GSearch, ParrayError> {
    require_setup(pa)?;
    let spec = pa.spec;
    let d = pa.d();
    let n = d + 1;
    let rev: Vec<FieldElement> = pa.theta.iter().rev().cloned().collect();
    let l = theta_lower(spec, &pa.theta);
    let l_rev = theta_lower(spec, &rev);
    let u = varphi_upper(spec, &pa.theta_star, &pa.varphi);
    let u_dual = varphi_upper(spec, &pa.theta_star, &pa.phi);

    let from_first_column = |g0: Vec<FieldElement>| {
        let mut cols = vec![g0];
        for j in 0..d {
            let next = l.shift(&-&pa.theta[d - j]).mul_vec(&cols[j]);
            cols.push(next);
        }
        ExactMatrix::from_columns(spec, n, &cols)
    };
    let generators: Vec<ExactMatrix> = (0..n)
        .map(|k| {
            let mut e = vec![FieldElement::zero(spec); n];
            e[k] = FieldElement::one(spec);
            from_first_column(e)
        })
        .collect();

    let residual_columns: Vec<Vec<FieldElement>> = generators
        .iter()
        .map(|g| {
            let r1 = l.mul(g).sub(&g.mul(&l_rev));
            let r2 = u.mul(g).sub(&g.mul(&u_dual));
            r1.entries().iter().chain(r2.entries()).cloned().collect()
        })
        .collect();
    let system = ExactMatrix::from_columns(spec, 2 * n * n, &residual_columns);
    let basis: Vec<ExactMatrix> = system
        .nullspace()
        .into_iter()
        .map(|c| {
            c.iter()
                .zip(&generators)
                .filter(|(x, _)| !x.is_zero())
                .fold(ExactMatrix::zeros(spec, n, n), |acc, (x, g)| acc.add(&g.scale(x)))
        })
        .collect();

    let k = basis.len();
    if k == 0 {
        return Ok(GSearch::NotFound {
            solution_dim: 0,
            pencil_exhausted: false,
        });
    }
    for size in 1..=k.min(d + 1) {
        for subset in combinations(k, size) {
            let g = subset
                .iter()
                .fold(ExactMatrix::zeros(spec, n, n), |acc, &i| acc.add(&basis[i]));
            if !g.determinant().expect("square").is_zero() {
                return Ok(GSearch::Found(g));
            }
        }
    }
    Ok(GSearch::NotFound {
        solution_dim: k,
        pencil_exhausted: true,
    })
}

/// All size-k subsets of 0..n in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}
