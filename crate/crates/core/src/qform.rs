//! Finite abelian groups with `Q/Z`-valued quadratic forms.
//!
//! Elements of `Z/d_1 x ... x Z/d_k` are indexed in mixed radix with the first
//! coordinate varying fastest.

use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::characters::{twisted_weight_data, weight_residues};
use crate::error::{Error, Result};
use crate::isometry::Isometry;
use crate::lattice::Lattice;
use crate::matrix::{int, rat, smith, Rat};

/// Largest group for which the full `q` table is materialised.
pub const MAX_TABLE: usize = 1 << 16;
/// Largest group accepted by the automorphism search.
pub const MAX_SEARCH_ORDER: usize = 1 << 12;

fn frac(x: Rat) -> Rat {
    &x - x.floor()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QFormGroup {
    orders: Vec<u64>,
    /// Common denominator of all values.
    den: i64,
    /// `q(x) * den`, reduced into `[0, den)`.
    num: Vec<i64>,
}

impl QFormGroup {
    /// Builds the table from an explicit value per element.
    pub fn from_table(orders: Vec<u64>, q: Vec<Rat>) -> Result<Self> {
        let size: u64 = orders.iter().product();
        if q.len() as u64 != size {
            return Err(Error::Shape(format!(
                "q table has {} entries for a group of order {}",
                q.len(),
                size
            )));
        }
        let g = QFormGroup::from_rats(orders, &q)?;
        g.validate()?;
        Ok(g)
    }

    /// `q(sum a_i g_i) = sum a_i^2 q_i + sum_{i<j} a_i a_j b_ij` mod 1.
    pub fn from_generators(orders: Vec<u64>, q_gens: &[Rat], b_gens: &[Vec<Rat>]) -> Result<Self> {
        let k = orders.len();
        if q_gens.len() != k || b_gens.len() != k || b_gens.iter().any(|r| r.len() != k) {
            return Err(Error::Shape(
                "generator data does not match the number of generators".into(),
            ));
        }
        let size = table_size(&orders)?;
        let mut q = Vec::with_capacity(size);
        for idx in 0..size {
            let a = decode(&orders, idx);
            let mut v = Rat::zero();
            for i in 0..k {
                v += rat((a[i] * a[i]) as i64, 1) * &q_gens[i];
                for j in i + 1..k {
                    v += rat((a[i] * a[j]) as i64, 1) * &b_gens[i][j];
                }
            }
            q.push(v);
        }
        QFormGroup::from_table(orders, q)
    }

    fn from_rats(orders: Vec<u64>, q: &[Rat]) -> Result<Self> {
        let mut den = 1i64;
        for v in q {
            let d = v
                .denom()
                .to_i64()
                .ok_or_else(|| Error::Shape("q denominator too large".into()))?;
            den = num_integer::lcm(den, d);
        }
        let num = q
            .iter()
            .map(|v| {
                let scaled = v * rat(den, 1);
                scaled
                    .to_integer()
                    .to_i64()
                    .expect("bounded")
                    .rem_euclid(den)
            })
            .collect();
        Ok(QFormGroup { orders, den, num })
    }

    pub fn trivial() -> Self {
        QFormGroup {
            orders: Vec::new(),
            den: 1,
            num: vec![0],
        }
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn order(&self) -> usize {
        self.num.len()
    }

    pub fn q(&self, idx: usize) -> Rat {
        rat(self.num[idx], self.den)
    }

    pub fn q_table(&self) -> Vec<Rat> {
        (0..self.order()).map(|i| self.q(i)).collect()
    }

    fn qn(&self, idx: usize) -> i64 {
        self.num[idx]
    }

    /// `b(x, y) * den` in `[0, den)`.
    fn bn(&self, x: usize, y: usize) -> i64 {
        (self.num[self.add(x, y)] - self.num[x] - self.num[y]).rem_euclid(self.den)
    }

    pub fn element(&self, idx: usize) -> Vec<u64> {
        decode(&self.orders, idx)
    }

    pub fn index(&self, a: &[u64]) -> usize {
        encode(&self.orders, a)
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        let (mut a, mut b, mut idx, mut place) = (x, y, 0, 1);
        for &d in &self.orders {
            let d = d as usize;
            idx += ((a % d + b % d) % d) * place;
            place *= d;
            a /= d;
            b /= d;
        }
        idx
    }

    pub fn multiple(&self, x: usize, k: u64) -> usize {
        let (mut a, mut idx, mut place) = (x, 0, 1);
        for &d in &self.orders {
            let d = d as usize;
            idx += ((a % d) * (k as usize % d) % d) * place;
            place *= d;
            a /= d;
        }
        idx
    }

    pub fn element_order(&self, x: usize) -> u64 {
        (1..)
            .find(|&k| self.multiple(x, k) == 0)
            .expect("finite group")
    }

    pub fn bilinear(&self, x: usize, y: usize) -> Rat {
        rat(self.bn(x, y), self.den)
    }

    pub fn isotropic_count(&self) -> usize {
        self.num.iter().filter(|&&v| v == 0).count()
    }

    /// Checks `q(kx) = k^2 q(x)` and bilinearity of `b` on all elements.
    pub fn validate(&self) -> Result<()> {
        let n = self.order();
        if self.num[0] != 0 {
            return Err(Error::Precondition("q(0) is not 0".into()));
        }
        let exponent = self.orders.iter().copied().max().unwrap_or(1);
        for x in 0..n {
            for k in 2..=exponent {
                let lhs = self.qn(self.multiple(x, k));
                if lhs != ((k * k) as i64 * self.qn(x)).rem_euclid(self.den) {
                    return Err(Error::Precondition(format!(
                        "q({}x) != {}^2 q(x) at element {}",
                        k, k, x
                    )));
                }
            }
        }
        // additivity in the first slot for generator steps; all second arguments when small
        let gens: Vec<usize> = (0..self.orders.len()).map(|i| self.generator(i)).collect();
        let second: Vec<usize> = if n <= 1024 {
            (0..n).collect()
        } else {
            gens.clone()
        };
        for x in 0..n {
            for &y in &gens {
                for &z in &second {
                    if self.bn(self.add(x, y), z)
                        != (self.bn(x, z) + self.bn(y, z)).rem_euclid(self.den)
                    {
                        return Err(Error::Precondition("b is not bilinear".into()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn generator(&self, i: usize) -> usize {
        let mut a = vec![0; self.orders.len()];
        a[i] = 1;
        self.index(&a)
    }

    /// Orthogonal direct sum.
    pub fn direct_sum(&self, other: &QFormGroup) -> Result<QFormGroup> {
        let mut orders = self.orders.clone();
        orders.extend_from_slice(&other.orders);
        let size = table_size(&orders)?;
        let den = num_integer::lcm(self.den, other.den);
        let (sa, sb) = (den / self.den, den / other.den);
        let mut num = Vec::with_capacity(size);
        for j in 0..other.order() {
            for i in 0..self.order() {
                num.push((self.num[i] * sa + other.num[j] * sb).rem_euclid(den));
            }
        }
        Ok(QFormGroup { orders, den, num })
    }
}

fn table_size(orders: &[u64]) -> Result<usize> {
    let mut size: usize = 1;
    for &d in orders {
        if d == 0 {
            return Err(Error::Shape("cyclic factor of order 0".into()));
        }
        size = size
            .checked_mul(d as usize)
            .filter(|&s| s <= MAX_TABLE)
            .ok_or_else(|| {
                Error::SearchBudget(format!("group larger than {} elements", MAX_TABLE))
            })?;
    }
    Ok(size)
}

fn decode(orders: &[u64], mut idx: usize) -> Vec<u64> {
    orders
        .iter()
        .map(|&d| {
            let a = (idx as u64) % d;
            idx /= d as usize;
            a
        })
        .collect()
}

fn encode(orders: &[u64], a: &[u64]) -> usize {
    let mut idx = 0usize;
    for (&d, &x) in orders.iter().zip(a).rev() {
        idx = idx * d as usize + (x % d) as usize;
    }
    idx
}

/// `L*/L` with `q(x) = (x|x)/2 mod 1`.
pub fn discriminant_qform(l: &Lattice) -> Result<QFormGroup> {
    let s = smith(l.gram());
    let mut gens = Vec::new();
    let mut orders = Vec::new();
    for (i, d) in s.diagonal.iter().enumerate() {
        if !d.is_one() {
            let col: Vec<Rat> =
                s.v.column(i)
                    .iter()
                    .map(|x| Rat::new(x.clone(), d.clone()))
                    .collect();
            gens.push(col);
            orders.push(
                d.to_u64()
                    .ok_or_else(|| Error::SearchBudget("invariant factor too large".into()))?,
            );
        }
    }
    let size = table_size(&orders)?;
    let n = l.rank();
    let mut q = Vec::with_capacity(size);
    for idx in 0..size {
        let a = decode(&orders, idx);
        let mut x = vec![Rat::zero(); n];
        for (ai, g) in a.iter().zip(&gens) {
            for (xk, gk) in x.iter_mut().zip(g) {
                *xk += rat(*ai as i64, 1) * gk;
            }
        }
        q.push(frac(l.norm(&x) / rat(2, 1)));
    }
    QFormGroup::from_table(orders, q)
}

/// An automorphism, given by the images of the generators.
pub type Automorphism = Vec<usize>;

/// All `q`-preserving automorphisms, in lexicographic order of generator images.
pub fn orthogonal_group(g: &QFormGroup) -> Result<Vec<Automorphism>> {
    if g.order() > MAX_SEARCH_ORDER {
        return Err(Error::SearchBudget(format!(
            "group of order {} exceeds {}",
            g.order(),
            MAX_SEARCH_ORDER
        )));
    }
    let k = g.orders().len();
    let gens: Vec<usize> = (0..k).map(|i| g.generator(i)).collect();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    search(g, &gens, &mut current, &mut out);
    Ok(out)
}

fn search(g: &QFormGroup, gens: &[usize], current: &mut Vec<usize>, out: &mut Vec<Automorphism>) {
    let i = current.len();
    if i == gens.len() {
        if is_bijective_isometry(g, current) {
            out.push(current.clone());
        }
        return;
    }
    let d = g.orders()[i];
    for y in 0..g.order() {
        if g.multiple(y, d) != 0 || g.qn(y) != g.qn(gens[i]) {
            continue;
        }
        if (0..i).any(|j| g.bn(current[j], y) != g.bn(gens[j], gens[i])) {
            continue;
        }
        current.push(y);
        search(g, gens, current, out);
        current.pop();
    }
}

fn apply(g: &QFormGroup, images: &[usize], x: usize) -> usize {
    let a = g.element(x);
    let mut acc = 0;
    for (ai, &img) in a.iter().zip(images) {
        acc = g.add(acc, g.multiple(img, *ai));
    }
    acc
}

fn is_bijective_isometry(g: &QFormGroup, images: &[usize]) -> bool {
    let mut seen = vec![false; g.order()];
    for x in 0..g.order() {
        let y = apply(g, images, x);
        if seen[y] || g.qn(y) != g.qn(x) {
            return false;
        }
        seen[y] = true;
    }
    true
}

pub fn orthogonal_group_order(g: &QFormGroup) -> Result<usize> {
    Ok(orthogonal_group(g)?.len())
}

/// On-disk form: `{orders, q_num, q_den}` over all elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QFormFile {
    pub orders: Vec<u64>,
    pub q_num: Vec<i64>,
    pub q_den: Vec<i64>,
}

impl QFormFile {
    pub fn from_group(g: &QFormGroup) -> Self {
        let q = g.q_table();
        let q_num = q
            .iter()
            .map(|v| v.numer().to_i64().expect("small"))
            .collect();
        let q_den = q
            .iter()
            .map(|v| v.denom().to_i64().expect("small"))
            .collect();
        QFormFile {
            orders: g.orders.clone(),
            q_num,
            q_den,
        }
    }

    pub fn into_group(self) -> Result<QFormGroup> {
        if self.q_num.len() != self.q_den.len() {
            return Err(Error::Parse("q_num and q_den lengths differ".into()));
        }
        if self.q_den.contains(&0) {
            return Err(Error::Parse("zero denominator".into()));
        }
        let q = self
            .q_num
            .iter()
            .zip(&self.q_den)
            .map(|(&n, &d)| rat(n, d))
            .collect();
        QFormGroup::from_table(self.orders, q)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrrModel {
    pub e: QFormGroup,
    pub f: QFormGroup,
    pub product: QFormGroup,
    /// `q([V^T[g](j)])` for `j = 0..4`, the weight classes of the twisted module sectors.
    pub twisted_residues: Vec<Rat>,
    /// `q` on `E x F` taken as the orthogonal sum (an assumption, not derived).
    pub assumes_orthogonal_sum: bool,
}

/// `E x F` with `E = L*/L` and `F = <[V_L(1)], [V^T[g](0)]> = 4^2`.
pub fn irr_group_model(l: &Lattice, g: &Isometry) -> Result<IrrModel> {
    if g.host() != l {
        return Err(Error::Precondition(
            "isometry belongs to a different lattice".into(),
        ));
    }
    if !g.coinvariant_equality()?.equal {
        return Err(Error::Precondition("(1-g)L* differs from L".into()));
    }
    let e = discriminant_qform(l)?;
    let tw = twisted_weight_data(g, 1)?;
    if tw.dim_t != int(1) {
        return Err(Error::Precondition(format!(
            "dim T = {} for the g-twisted module",
            tw.dim_t
        )));
    }
    // V_L(1) shifts the twisted sectors by one eigenvalue class, i.e. by 1/4 in weight
    let residues: Vec<Rat> = (0..4).map(|j| frac(&tw.epsilon + rat(j, 4))).collect();
    let present = weight_residues(&tw.character);
    if residues.iter().any(|r| !present.contains(r)) {
        return Err(Error::Precondition(
            "twisted character misses a weight class".into(),
        ));
    }
    let qa = Rat::zero();
    let qb = residues[0].clone();
    let bab = frac(&residues[1] - &qa - &qb);
    let f = QFormGroup::from_generators(
        vec![4, 4],
        &[qa, qb],
        &[vec![Rat::zero(), bab.clone()], vec![bab, Rat::zero()]],
    )?;
    let product = e.direct_sum(&f)?;
    Ok(IrrModel {
        e,
        f,
        product,
        twisted_residues: residues,
        assumes_orthogonal_sum: true,
    })
}
