use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_integer::Integer;
use smallvec::SmallVec;

use super::weyl::FiniteWeylElement;
use super::Weight;
use crate::error::{Error, Result};
use crate::qexp::QExp;
use crate::scalar::Rat;

/// Cartan–Killing type of a simple root system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum TypeLabel {
    A,
    B,
    C,
    D,
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl FromStr for TypeLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<TypeLabel> {
        Ok(match s.trim().to_ascii_uppercase().as_str() {
            "A" => TypeLabel::A,
            "B" => TypeLabel::B,
            "C" => TypeLabel::C,
            "D" => TypeLabel::D,
            "E" | "E6" => TypeLabel::E6,
            "E7" => TypeLabel::E7,
            "E8" => TypeLabel::E8,
            "F" | "F4" => TypeLabel::F4,
            "G" | "G2" => TypeLabel::G2,
            other => return Err(Error::Config(format!("unknown root system type `{other}`"))),
        })
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TypeLabel::A => "A",
            TypeLabel::B => "B",
            TypeLabel::C => "C",
            TypeLabel::D => "D",
            TypeLabel::E6 => "E",
            TypeLabel::E7 => "E",
            TypeLabel::E8 => "E",
            TypeLabel::F4 => "F",
            TypeLabel::G2 => "G",
        };
        write!(f, "{s}")
    }
}

/// One root of `R`, with the data needed for fast pairings.
#[derive(Clone, Debug)]
pub struct RootInfo {
    /// The root in fundamental-weight coordinates.
    pub weight: Weight,
    /// Coordinates in the basis of simple roots.
    pub alpha_coords: SmallVec<[i64; 8]>,
    /// Coordinates of the coroot in the basis of simple coroots, so that
    /// `(b, α^∨) = Σ coroot[i]·l_i`.
    pub coroot: SmallVec<[i64; 8]>,
    /// `ν_α = (α, α)/2 ∈ {1, 2, 3}`.
    pub nu: i64,
    pub positive: bool,
}

/// The length-zero part `Π ≅ P/Q` of the extended affine Weyl group.
#[derive(Clone, Debug)]
pub struct PiGroup {
    /// Minuscule indices `O′` (1-based, increasing).
    pub minuscule: Vec<usize>,
    /// `u_r = u_{ω_r}` for each minuscule `r`, in the same order.
    pub u: Vec<FiniteWeylElement>,
}

/// Root datum of one simple type in the normalization `(α, α) = 2` for
/// short roots.
pub struct RootSystem {
    label: TypeLabel,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    cartan_inv: Vec<Vec<Rat>>,
    gram: Vec<Vec<Rat>>,
    gram_units: Vec<Vec<i64>>,
    nu: Vec<i64>,
    theta_short: Weight,
    e_denom: i64,
    roots: Vec<RootInfo>,
    root_index: HashMap<Weight, usize>,
    pi_group: PiGroup,
    w0: FiniteWeylElement,
    elements: OnceLock<std::result::Result<Vec<FiniteWeylElement>, String>>,
}

/// Upper bound on `|W|` for explicit enumeration of the finite Weyl group.
pub const MAX_ENUMERATED_WEYL: usize = 200_000;

impl fmt::Debug for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootSystem({})", self.name())
    }
}

/// Builds the root datum of type `label` and rank `rank` (Bourbaki labels).
pub fn build_root_system(label: TypeLabel, rank: usize) -> Result<RootSystem> {
    RootSystem::new(label, rank)
}

fn dynkin(label: TypeLabel, rank: usize) -> Result<(Vec<i64>, Vec<(usize, usize)>)> {
    let bad = || Error::Config(format!("no simple root system of type {label} and rank {rank}"));
    let chain = |n: usize| (1..n).map(|i| (i - 1, i)).collect::<Vec<_>>();
    let out = match label {
        TypeLabel::A if (1..=8).contains(&rank) => (vec![1; rank], chain(rank)),
        TypeLabel::B if (2..=8).contains(&rank) => {
            let mut nu = vec![2; rank];
            nu[rank - 1] = 1;
            (nu, chain(rank))
        }
        TypeLabel::C if (2..=8).contains(&rank) => {
            let mut nu = vec![1; rank];
            nu[rank - 1] = 2;
            (nu, chain(rank))
        }
        TypeLabel::D if (4..=8).contains(&rank) => {
            let mut edges = chain(rank - 1);
            edges.push((rank - 3, rank - 1));
            (vec![1; rank], edges)
        }
        TypeLabel::E6 | TypeLabel::E7 | TypeLabel::E8 => {
            let n = match label {
                TypeLabel::E6 => 6,
                TypeLabel::E7 => 7,
                _ => 8,
            };
            if rank != n {
                return Err(bad());
            }
            let mut edges = vec![(0, 2), (1, 3), (2, 3)];
            for i in 3..n - 1 {
                edges.push((i, i + 1));
            }
            (vec![1; n], edges)
        }
        TypeLabel::F4 if rank == 4 => (vec![2, 2, 1, 1], chain(4)),
        TypeLabel::G2 if rank == 2 => (vec![1, 3], chain(2)),
        _ => return Err(bad()),
    };
    Ok(out)
}

pub(crate) fn invert(m: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut inv: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).expect("singular matrix");
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col].recip();
        for j in 0..n {
            a[col][j] = &a[col][j] * &p;
            inv[col][j] = &inv[col][j] * &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let x = &a[col][j] * &f;
                    a[r][j] = &a[r][j] - &x;
                    let y = &inv[col][j] * &f;
                    inv[r][j] = &inv[r][j] - &y;
                }
            }
        }
    }
    inv
}

impl RootSystem {
    fn new(label: TypeLabel, rank: usize) -> Result<RootSystem> {
        let (nu, edges) = dynkin(label, rank)?;
        let n = rank;
        // Symmetric form on simple roots.
        let mut bform = vec![vec![0i64; n]; n];
        for i in 0..n {
            bform[i][i] = 2 * nu[i];
        }
        for &(i, j) in &edges {
            let v = -nu[i].max(nu[j]);
            bform[i][j] = v;
            bform[j][i] = v;
        }
        let mut cartan = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                assert!(bform[i][j] % nu[i] == 0);
                cartan[i][j] = bform[i][j] / nu[i];
            }
        }
        let cartan_rat: Vec<Vec<Rat>> =
            cartan.iter().map(|r| r.iter().map(|&x| Rat::int(x)).collect()).collect();
        let cartan_inv = invert(&cartan_rat);
        // Gram matrix of fundamental weights: ω_i = Σ_j (A^{-1})_{ji} α_j.
        let mut gram = vec![vec![Rat::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = Rat::zero();
                for k in 0..n {
                    for l in 0..n {
                        if bform[k][l] != 0 {
                            let t = &(&cartan_inv[k][i] * &cartan_inv[l][j]) * &Rat::int(bform[k][l]);
                            acc += &t;
                        }
                    }
                }
                gram[i][j] = acc;
            }
        }
        let gram_units: Vec<Vec<i64>> = gram
            .iter()
            .map(|row| {
                row.iter()
                    .map(|g| QExp::from_rat(g).expect("gram entry outside exponent lattice").0)
                    .collect()
            })
            .collect();
        // e: least positive integer with e·(ω_i,ω_j)/2 ∈ ℤ for all i, j.
        let mut e_denom = 1i64;
        for row in &gram {
            for g in row {
                let half = g * &Rat::frac(1, 2);
                let (_, d) = half.to_big_parts();
                let d = i64::try_from(d).expect("small denominator");
                e_denom = e_denom.lcm(&d);
            }
        }

        // Roots by closure of the simple roots under simple reflections.
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let mut c = vec![0i64; n];
            c[i] = 1;
            seen.insert(c.clone());
            queue.push_back(c);
        }
        while let Some(c) = queue.pop_front() {
            for i in 0..n {
                let pairing: i64 = (0..n).map(|j| c[j] * cartan[i][j]).sum();
                let mut d = c.clone();
                d[i] -= pairing;
                if seen.insert(d.clone()) {
                    queue.push_back(d);
                }
            }
        }
        let mut roots = Vec::new();
        for c in seen {
            let norm: i64 = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| c[i] * c[j] * bform[i][j]).sum();
            let nu_a = norm / 2;
            let positive = c.iter().all(|&x| x >= 0);
            let weight_coords: Vec<i32> = (0..n)
                .map(|i| (0..n).map(|j| cartan[i][j] * c[j]).sum::<i64>() as i32)
                .collect();
            let coroot = (0..n)
                .map(|i| {
                    assert!((c[i] * nu[i]) % nu_a == 0);
                    c[i] * nu[i] / nu_a
                })
                .collect();
            roots.push(RootInfo {
                weight: Weight::new(&weight_coords),
                alpha_coords: c.into_iter().collect(),
                coroot,
                nu: nu_a,
                positive,
            });
        }
        // Positive roots first, ordered by height then coordinates.
        roots.sort_by(|a, b| {
            let ha: i64 = a.alpha_coords.iter().sum();
            let hb: i64 = b.alpha_coords.iter().sum();
            (!a.positive, ha.abs(), &a.alpha_coords).cmp(&(!b.positive, hb.abs(), &b.alpha_coords))
        });
        let root_index = roots.iter().enumerate().map(|(k, r)| (r.weight.clone(), k)).collect();
        let theta_short = roots
            .iter()
            .filter(|r| r.nu == 1 && r.weight.is_dominant())
            .map(|r| r.weight.clone())
            .next()
            .expect("dominant short root");

        let mut rs = RootSystem {
            label,
            rank,
            cartan,
            cartan_inv,
            gram,
            gram_units,
            nu,
            theta_short,
            e_denom,
            roots,
            root_index,
            pi_group: PiGroup { minuscule: vec![], u: vec![] },
            w0: FiniteWeylElement::identity(rank),
            elements: OnceLock::new(),
        };
        let rho = rs.rho();
        rs.w0 = rs.weyl_from_key(&(-&rho));
        let minuscule: Vec<usize> =
            (1..=n).filter(|&r| rs.pair(&Weight::fundamental(n, r), &rs.theta_short) == Rat::one()).collect();
        let u = minuscule
            .iter()
            .map(|&r| rs.antidominant(&Weight::fundamental(n, r)).1)
            .collect();
        rs.pi_group = PiGroup { minuscule, u };
        Ok(rs)
    }

    pub fn label(&self) -> TypeLabel {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Short name such as `A2` or `G2`.
    pub fn name(&self) -> String {
        format!("{}{}", self.label, self.rank)
    }

    /// `A_{ij} = (α_j, α_i^∨)`, zero-based indices.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// `G_{ij} = (ω_i, ω_j)`, zero-based indices.
    pub fn gram(&self) -> &[Vec<Rat>] {
        &self.gram
    }

    /// `ν_i` for a 1-based simple index.
    pub fn nu(&self, i: usize) -> i64 {
        self.nu[i - 1]
    }

    pub fn nus(&self) -> &[i64] {
        &self.nu
    }

    /// Highest short root `ϑ`.
    pub fn theta_short(&self) -> &Weight {
        &self.theta_short
    }

    pub fn e_denom(&self) -> i64 {
        self.e_denom
    }

    pub fn pi_group(&self) -> &PiGroup {
        &self.pi_group
    }

    /// The set `O = {0} ∪ O′`.
    pub fn coset_indices(&self) -> Vec<usize> {
        std::iter::once(0).chain(self.pi_group.minuscule.iter().copied()).collect()
    }

    pub fn roots(&self) -> &[RootInfo] {
        &self.roots
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &RootInfo> {
        self.roots.iter().filter(|r| r.positive)
    }

    pub fn root_index(&self, alpha: &Weight) -> Option<usize> {
        self.root_index.get(alpha).copied()
    }

    pub fn root(&self, idx: usize) -> &RootInfo {
        &self.roots[idx]
    }

    /// Simple root `α_i` (1-based) in fundamental-weight coordinates.
    pub fn simple_root(&self, i: usize) -> Weight {
        let coords: Vec<i32> = (0..self.rank).map(|k| self.cartan[k][i - 1] as i32).collect();
        Weight::new(&coords)
    }

    /// `ρ = Σ ω_i`.
    pub fn rho(&self) -> Weight {
        Weight::new(&vec![1; self.rank])
    }

    pub fn w0(&self) -> &FiniteWeylElement {
        &self.w0
    }

    /// Exact scalar product `(b, c)`.
    pub fn pair(&self, b: &Weight, c: &Weight) -> Rat {
        Rat::frac(self.pair_units(b, c), QExp::UNIT)
    }

    /// `(b, c)` as a q-exponent.
    pub fn pair_exp(&self, b: &Weight, c: &Weight) -> QExp {
        QExp(self.pair_units(b, c))
    }

    fn pair_units(&self, b: &Weight, c: &Weight) -> i64 {
        let (b, c) = (b.coords(), c.coords());
        let mut acc = 0i64;
        for i in 0..self.rank {
            if b[i] == 0 {
                continue;
            }
            let mut row = 0i64;
            for j in 0..self.rank {
                row += self.gram_units[i][j] * c[j] as i64;
            }
            acc += b[i] as i64 * row;
        }
        acc
    }

    /// `(b, b)/2` as a q-exponent.
    pub fn half_norm(&self, b: &Weight) -> QExp {
        QExp(self.pair_units(b, b) / 2)
    }

    /// `(b, α^∨)` for the root with index `idx`.
    pub fn coroot_pairing(&self, b: &Weight, idx: usize) -> i64 {
        self.roots[idx].coroot.iter().zip(b.coords()).map(|(&k, &l)| k * l as i64).sum()
    }

    /// `(b, α^∨)` for an arbitrary root given by its weight.
    pub fn coroot_pairing_root(&self, b: &Weight, alpha: &Weight) -> i64 {
        let idx = self.root_index(alpha).expect("not a root");
        self.coroot_pairing(b, idx)
    }

    /// `Σ_{α>0} (b, α^∨) = (b, 2ρ^∨)`, an integer.
    pub fn two_rho_vee(&self, b: &Weight) -> i64 {
        self.positive_roots().map(|r| {
            r.coroot.iter().zip(b.coords()).map(|(&k, &l)| k * l as i64).sum::<i64>()
        }).sum()
    }

    /// Coordinates of `b` in the basis of simple roots.
    pub fn alpha_coords(&self, b: &Weight) -> Vec<Rat> {
        (0..self.rank)
            .map(|i| {
                let mut acc = Rat::zero();
                for j in 0..self.rank {
                    if b.coords()[j] != 0 {
                        acc += &(&self.cartan_inv[i][j] * &Rat::int(b.coords()[j] as i64));
                    }
                }
                acc
            })
            .collect()
    }

    /// `b ∈ Q`.
    pub fn in_root_lattice(&self, b: &Weight) -> bool {
        self.alpha_coords(b).iter().all(Rat::is_integer)
    }

    /// `b ∈ Q_+`.
    pub fn in_positive_cone(&self, b: &Weight) -> bool {
        self.alpha_coords(b).iter().all(|c| c.is_integer() && !c.is_negative())
    }

    /// `ω_r` for `r ∈ O`, with `ω_0 = 0`: a representative of the coset `r`.
    pub fn coset_representative(&self, r: usize) -> Weight {
        if r == 0 {
            Weight::zero(self.rank)
        } else {
            Weight::fundamental(self.rank, r)
        }
    }

    /// Index `r ∈ O` of the coset `b + Q = ω_r + Q` (with `ω_0 = 0`).
    pub fn coset(&self, b: &Weight) -> usize {
        if self.in_root_lattice(b) {
            return 0;
        }
        for &r in &self.pi_group.minuscule {
            if self.in_root_lattice(&(b - &Weight::fundamental(self.rank, r))) {
                return r;
            }
        }
        unreachable!("minuscule weights represent every coset")
    }

    /// Simple reflection `s_i` (1-based) on a weight.
    pub fn reflect(&self, i: usize, b: &Weight) -> Weight {
        let k = b.coroot(i);
        if k == 0 {
            return b.clone();
        }
        let mut out = b.clone();
        for j in 0..self.rank {
            let v = out.coords()[j] as i64 - k * self.cartan[j][i - 1];
            out.set(j, v as i32);
        }
        out
    }

    /// Reflection `s_α` in the root with index `idx`.
    pub fn reflect_root(&self, idx: usize, b: &Weight) -> Weight {
        let k = self.coroot_pairing(b, idx);
        b.add_scaled(&self.roots[idx].weight, -k)
    }

    /// `b^ι = −w_0(b)`.
    pub fn iota(&self, b: &Weight) -> Weight {
        -&self.apply(&self.w0, b)
    }

    /// The explicit list of elements of `W`, when small enough.
    pub fn weyl_elements(&self) -> Result<&[FiniteWeylElement]> {
        let res = self.elements.get_or_init(|| {
            let rho = self.rho();
            let mut seen: BTreeSet<Weight> = BTreeSet::new();
            let mut queue = VecDeque::new();
            seen.insert(rho.clone());
            queue.push_back(rho);
            while let Some(x) = queue.pop_front() {
                for i in 1..=self.rank {
                    let y = self.reflect(i, &x);
                    if seen.insert(y.clone()) {
                        if seen.len() > MAX_ENUMERATED_WEYL {
                            return Err(format!("|W| exceeds {MAX_ENUMERATED_WEYL} for {}", self.name()));
                        }
                        queue.push_back(y);
                    }
                }
            }
            let mut out: Vec<FiniteWeylElement> = seen.iter().map(|k| self.weyl_from_key(k)).collect();
            out.sort_by(|a, b| (a.length(), a.word()).cmp(&(b.length(), b.word())));
            Ok(out)
        });
        res.as_deref().map_err(|e| Error::Capability(e.clone()))
    }

    /// The `W`-orbit of `b`, sorted.
    pub fn orbit(&self, b: &Weight) -> Vec<Weight> {
        let mut seen: BTreeSet<Weight> = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(b.clone());
        queue.push_back(b.clone());
        while let Some(x) = queue.pop_front() {
            for i in 1..=self.rank {
                if x.coroot(i) != 0 {
                    let y = self.reflect(i, &x);
                    if seen.insert(y.clone()) {
                        queue.push_back(y);
                    }
                }
            }
        }
        seen.into_iter().collect()
    }
}
