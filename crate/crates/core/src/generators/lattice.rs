use std::collections::BTreeMap;

use super::{GenError, SmallField};
use crate::field::{square_free_decomposition, FieldElement, FieldSpec};
use crate::leonard::is_leonard_pair_with_spectra;
use crate::matrix::ExactMatrix;

const MAX_N: usize = 5;
const MAX_SUBSPACES: u64 = 3000;
const MAX_PRIME: u32 = 7;

type Sparse = BTreeMap<usize, FieldElement>;

/// Number of k-dimensional subspaces of GF(q)^n.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let (mut num, mut den) = (1u128, 1u128);
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// All subspaces of GF(q)^n, graded by dimension, with the raising map R
/// (sum over covers), the lowering map L (s^{1-n} times the sum over
/// subspaces covered) and K = diag(s^{n - 2 dim}) where s^2 = q.
#[derive(Debug, Clone)]
pub struct SubspaceLattice {
    pub n: usize,
    pub q: u64,
    /// Row-reduced bases, ordered by dimension and then enumeration order.
    pub subspaces: Vec<Vec<Vec<u32>>>,
    pub dims: Vec<usize>,
    pub up: Vec<Vec<usize>>,
    pub down: Vec<Vec<usize>>,
    /// Q(sqrt q), or Q when q is a square.
    pub spec: FieldSpec,
    pub s: FieldElement,
}

fn contains(field: &SmallField, basis: &[Vec<u32>], v: &[u32]) -> bool {
    let mut v = v.to_vec();
    for row in basis {
        let pivot = row.iter().position(|&x| x != 0).expect("nonzero basis row");
        let c = v[pivot];
        if c != 0 {
            for (vi, &ri) in v.iter_mut().zip(row) {
                *vi = field.sub(*vi, field.mul(c, ri));
            }
        }
    }
    v.iter().all(|&x| x == 0)
}

fn rref_subspaces(field: &SmallField, n: usize, dim: usize) -> Vec<Vec<Vec<u32>>> {
    let q = field.order();
    let mut out = Vec::new();
    for pivots in combinations(n, dim) {
        let free: Vec<(usize, usize)> = (0..dim)
            .flat_map(|r| ((pivots[r] + 1)..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
            .collect();
        let mut counter = vec![0u32; free.len()];
        loop {
            let mut rows = vec![vec![0u32; n]; dim];
            for (r, &p) in pivots.iter().enumerate() {
                rows[r][p] = 1;
            }
            for (&(r, c), &x) in free.iter().zip(&counter) {
                rows[r][c] = x;
            }
            out.push(rows);
            let mut i = 0;
            while i < counter.len() {
                counter[i] += 1;
                if counter[i] < q {
                    break;
                }
                counter[i] = 0;
                i += 1;
            }
            if i == counter.len() {
                break;
            }
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn build_lattice(n: usize, q: u64) -> Result<SubspaceLattice, GenError> {
    let field = SmallField::new(q).ok_or(GenError::BadOrder(q))?;
    if field.characteristic() > MAX_PRIME {
        return Err(GenError::BadOrder(q));
    }
    if n > MAX_N {
        return Err(GenError::TooLarge(format!("n = {n} exceeds {MAX_N}")));
    }
    let total: u128 = (0..=n).map(|k| gaussian_binomial(n, k, q)).sum();
    if total > MAX_SUBSPACES as u128 {
        return Err(GenError::TooLarge(format!("{total} subspaces exceed {MAX_SUBSPACES}")));
    }
    let mut subspaces = Vec::new();
    let mut dims = Vec::new();
    let mut start = vec![0];
    for k in 0..=n {
        let level = rref_subspaces(&field, n, k);
        dims.extend(std::iter::repeat(k).take(level.len()));
        subspaces.extend(level);
        start.push(subspaces.len());
    }
    let mut up = vec![Vec::new(); subspaces.len()];
    let mut down = vec![Vec::new(); subspaces.len()];
    for k in 0..n {
        for x in start[k]..start[k + 1] {
            for y in start[k + 1]..start[k + 2] {
                if subspaces[x].iter().all(|v| contains(&field, &subspaces[y], v)) {
                    up[x].push(y);
                    down[y].push(x);
                }
            }
        }
    }
    let (c, m) = square_free_decomposition(q);
    let (spec, s) = if m == 1 {
        (FieldSpec::Rationals, FieldElement::from_i64(FieldSpec::Rationals, c as i64))
    } else {
        let spec = FieldSpec::quadratic(m as i64).map_err(|_| GenError::BadOrder(q))?;
        let root = FieldElement::sqrt_generator(spec).unwrap();
        (spec, &FieldElement::from_i64(spec, c as i64) * &root)
    };
    Ok(SubspaceLattice {
        n,
        q,
        subspaces,
        dims,
        up,
        down,
        spec,
        s,
    })
}

fn add_into(v: &mut Sparse, i: usize, c: &FieldElement) {
    let e = v.entry(i).or_insert_with(|| FieldElement::zero(c.spec()));
    *e = &*e + c;
    if e.is_zero() {
        v.remove(&i);
    }
}

impl SubspaceLattice {
    pub fn len(&self) -> usize {
        self.subspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty()
    }

    fn s_pow(&self, e: i64) -> FieldElement {
        self.s.pow(e).expect("s is nonzero")
    }

    /// Eigenvalue of K on a subspace of dimension `dim`.
    pub fn weight(&self, dim: usize) -> FieldElement {
        self.s_pow(self.n as i64 - 2 * dim as i64)
    }

    pub fn apply_r(&self, v: &Sparse) -> Sparse {
        let mut out = Sparse::new();
        for (&x, c) in v {
            for &y in &self.up[x] {
                add_into(&mut out, y, c);
            }
        }
        out
    }

    pub fn apply_l(&self, v: &Sparse) -> Sparse {
        let scale = self.s_pow(1 - self.n as i64);
        let mut out = Sparse::new();
        for (&x, c) in v {
            let c = &scale * c;
            for &y in &self.down[x] {
                add_into(&mut out, y, &c);
            }
        }
        out
    }

    /// K^e applied to v.
    pub fn apply_k(&self, v: &Sparse, e: i64) -> Sparse {
        v.iter()
            .map(|(&x, c)| (x, &self.weight(self.dims[x]).pow(e).unwrap() * c))
            .collect()
    }

    fn dense(&self, f: impl Fn(&Sparse) -> Sparse) -> ExactMatrix {
        let n = self.len();
        let mut m = ExactMatrix::zeros(self.spec, n, n);
        for x in 0..n {
            let unit = Sparse::from([(x, FieldElement::one(self.spec))]);
            for (y, c) in f(&unit) {
                m.set(y, x, c);
            }
        }
        m
    }

    pub fn r_matrix(&self) -> ExactMatrix {
        self.dense(|v| self.apply_r(v))
    }

    pub fn l_matrix(&self) -> ExactMatrix {
        self.dense(|v| self.apply_l(v))
    }

    pub fn k_matrix(&self) -> ExactMatrix {
        self.dense(|v| self.apply_k(v, 1))
    }

    /// KL = qLK, KR = q^-1 RK and LR - RL = (K - K^-1)/(s - s^-1), checked on
    /// every basis vector.
    pub fn relations_hold(&self) -> bool {
        let q = &self.s * &self.s;
        let q_inv = q.inv().unwrap();
        let denom = (&self.s - &self.s.inv().unwrap()).inv().unwrap();
        let scale = |v: &Sparse, c: &FieldElement| -> Sparse { v.iter().map(|(&i, x)| (i, c * x)).collect() };
        (0..self.len()).all(|x| {
            let e = Sparse::from([(x, FieldElement::one(self.spec))]);
            let kl = self.apply_k(&self.apply_l(&e), 1) == scale(&self.apply_l(&self.apply_k(&e, 1)), &q);
            let kr = self.apply_k(&self.apply_r(&e), 1) == scale(&self.apply_r(&self.apply_k(&e, 1)), &q_inv);
            let mut comm = self.apply_l(&self.apply_r(&e));
            for (i, c) in self.apply_r(&self.apply_l(&e)) {
                add_into(&mut comm, i, &-&c);
            }
            let w = self.weight(self.dims[x]);
            let rhs = &(&w - &w.inv().unwrap()) * &denom;
            let mut expected = Sparse::new();
            add_into(&mut expected, x, &rhs);
            kl && kr && comm == expected
        })
    }

    fn level(&self, k: usize) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.dims[x] == k).collect()
    }
}

/// One irreducible summand: basis v, Rv, ..., R^d v for v in ker L of
/// weight j, with A and A* restricted to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeComponent {
    pub weight: usize,
    pub d: usize,
    pub a: ExactMatrix,
    pub a_star: ExactMatrix,
    /// s^{d-2i} / (s - s^-1)
    pub theta: Vec<FieldElement>,
    /// s^{2i-d} / (s - s^-1)
    pub theta_star: Vec<FieldElement>,
    /// The pair is a Leonard pair with these spectra.
    pub certified: bool,
}

/// A = αR + K/(s - s^-1) and A* = βL + K^-1/(s - s^-1) on the lattice and on
/// each summand of its decomposition.
#[derive(Debug, Clone)]
pub struct LatticePair {
    pub lattice: SubspaceLattice,
    pub alpha: FieldElement,
    pub beta: FieldElement,
    pub components: Vec<LatticeComponent>,
}

impl LatticePair {
    pub fn a_matrix(&self) -> ExactMatrix {
        let lat = &self.lattice;
        let denom = (&lat.s - &lat.s.inv().unwrap()).inv().unwrap();
        lat.r_matrix().scale(&self.alpha).add(&lat.k_matrix().scale(&denom))
    }

    pub fn a_star_matrix(&self) -> ExactMatrix {
        let lat = &self.lattice;
        let denom = (&lat.s - &lat.s.inv().unwrap()).inv().unwrap();
        let k_inv = lat.dense(|v| lat.apply_k(v, -1));
        lat.l_matrix().scale(&self.beta).add(&k_inv.scale(&denom))
    }

    /// Multiset of component diameters, largest first.
    pub fn diameters(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.d).collect()
    }
}

/// Kernel of L on the weight-j piece, computed from the 0/1 incidence matrix
/// over Q (the nonzero scale of L does not change the kernel).
fn lowering_kernel(lat: &SubspaceLattice, j: usize) -> Vec<Sparse> {
    let cols = lat.level(j);
    let to_sparse = |coords: &[FieldElement]| -> Sparse {
        cols.iter()
            .zip(coords)
            .filter(|(_, c)| !c.is_zero())
            .map(|(&x, c)| (x, FieldElement::from_rational(lat.spec, c.as_rational().unwrap()).unwrap()))
            .collect()
    };
    if j == 0 {
        let one = vec![FieldElement::one(FieldSpec::Rationals); cols.len()];
        return vec![to_sparse(&one)];
    }
    let rows = lat.level(j - 1);
    let incidence = ExactMatrix::from_fn(FieldSpec::Rationals, rows.len(), cols.len(), |r, c| {
        FieldElement::from_i64(FieldSpec::Rationals, lat.down[cols[c]].contains(&rows[r]) as i64)
    });
    incidence.nullspace().iter().map(|v| to_sparse(v)).collect()
}

fn coordinate_of(target: &Sparse, base: &Sparse) -> Option<FieldElement> {
    if base.is_empty() {
        return target.is_empty().then(|| FieldElement::zero(FieldSpec::Rationals));
    }
    let (&i, b) = base.iter().next().unwrap();
    let c = target.get(&i).cloned().unwrap_or_else(|| FieldElement::zero(b.spec())) / b.clone();
    let scaled: Sparse = base.iter().map(|(&k, x)| (k, &c * x)).filter(|(_, x)| !x.is_zero()).collect();
    (scaled == *target).then_some(c)
}

pub fn lattice_pair(
    n: usize,
    q: u64,
    alpha: &FieldElement,
    beta: &FieldElement,
) -> Result<LatticePair, GenError> {
    let lat = build_lattice(n, q)?;
    let spec = lat.spec;
    for (name, x) in [("alpha", alpha), ("beta", beta)] {
        if x.spec() != spec {
            return Err(GenError::WrongField(x.clone(), spec));
        }
        if x.is_zero() {
            return Err(GenError::ZeroScalar(name));
        }
    }
    let product = alpha * beta;
    let excluded: Vec<FieldElement> = (0..n).map(|j| lat.s_pow(n as i64 - 1 - 2 * j as i64)).collect();
    if excluded.contains(&product) {
        let set: Vec<String> = excluded.iter().map(|x| x.to_string()).collect();
        return Err(GenError::Forbidden(format!("alpha*beta = {product}"), format!("{{{}}}", set.join(", "))));
    }
    if !lat.relations_hold() {
        return Err(GenError::RelationFailure("lattice K, R, L".into()));
    }
    let denom = (&lat.s - &lat.s.inv().unwrap()).inv().unwrap();
    let mut components = Vec::new();
    for j in 0..=n / 2 {
        let d = n - 2 * j;
        for v in lowering_kernel(&lat, j) {
            let mut chain = vec![v];
            for _ in 0..d {
                let next = lat.apply_r(chain.last().unwrap());
                if next.is_empty() {
                    return Err(GenError::Decomposition(format!("R-string from weight {j} is too short")));
                }
                chain.push(next);
            }
            if !lat.apply_r(chain.last().unwrap()).is_empty() {
                return Err(GenError::Decomposition(format!("R-string from weight {j} is too long")));
            }
            let theta: Vec<FieldElement> = (0..=d).map(|i| &lat.s_pow(d as i64 - 2 * i as i64) * &denom).collect();
            let theta_star: Vec<FieldElement> = (0..=d).map(|i| &lat.s_pow(2 * i as i64 - d as i64) * &denom).collect();
            let mut a = ExactMatrix::diagonal(spec, &theta);
            let mut a_star = ExactMatrix::diagonal(spec, &theta_star);
            for i in 1..=d {
                a.set(i, i - 1, alpha.clone());
                let c = coordinate_of(&lat.apply_l(&chain[i]), &chain[i - 1]).ok_or_else(|| {
                    GenError::Decomposition(format!("L does not map the R-string from weight {j} into itself"))
                })?;
                a_star.set(i - 1, i, beta * &c);
            }
            let certified = is_leonard_pair_with_spectra(&a, &a_star, &theta, &theta_star)
                .map(|r| r.is_leonard_pair())
                .unwrap_or(false);
            components.push(LatticeComponent {
                weight: j,
                d,
                a,
                a_star,
                theta,
                theta_star,
                certified,
            });
        }
    }
    let total: usize = components.iter().map(|c| c.d + 1).sum();
    if total != lat.len() {
        return Err(GenError::Decomposition(format!("summands have total dimension {total}, not {}", lat.len())));
    }
    Ok(LatticePair {
        lattice: lat,
        alpha: alpha.clone(),
        beta: beta.clone(),
        components,
    })
}
