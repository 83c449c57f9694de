//! Products, coproducts and the pairing on the span of isomorphism classes.
//!
//! Every class operation instantiates representatives on disjoint index
//! ranges, works on the relation rows and canonicalises the outcome, so
//! multiplicities come out as plain coefficients.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use serde::Serialize;
use serde_json::{json, Value};

use crate::bits::{self, bit, ones};
use crate::canon::{self, automorphism_count, canon_key, CanonKey, CANON_LIMIT};
use crate::enumeration::census;
use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::report::{Failure, VerificationReport};

/// Finite integer combination of basis elements `K`, zero terms dropped.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lin<K: Ord> {
    terms: BTreeMap<K, i64>,
}

pub type ClassSum = Lin<CanonKey>;
pub type TensorSum = Lin<(CanonKey, CanonKey)>;
pub type Tensor3 = Lin<(CanonKey, CanonKey, CanonKey)>;

impl<K: Ord> Default for Lin<K> {
    fn default() -> Self {
        Lin { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> Lin<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn term(k: K) -> Self {
        let mut s = Self::new();
        s.add(k, 1);
        s
    }

    pub fn add(&mut self, k: K, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(k) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: i64) {
        for (k, v) in &other.terms {
            self.add(k.clone(), v * c);
        }
    }

    pub fn coefficient(&self, k: &K) -> i64 {
        self.terms.get(k).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, i64)> {
        self.terms.iter().map(|(k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Apply a linear map given on basis elements.
    pub fn map<J: Ord + Clone>(&self, f: impl Fn(&K) -> Lin<J>) -> Lin<J> {
        let mut out = Lin::new();
        for (k, c) in self.iter() {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Apply a bilinear map given on pairs of basis elements.
    pub fn bilinear<J: Ord + Clone, L: Ord + Clone>(&self, other: &Lin<J>, f: impl Fn(&K, &J) -> Lin<L>) -> Lin<L> {
        let mut out = Lin::new();
        for (a, x) in self.iter() {
            for (b, y) in other.iter() {
                out.add_scaled(&f(a, b), x * y);
            }
        }
        out
    }
}

impl<K: Ord + Clone> std::ops::Add for &Lin<K> {
    type Output = Lin<K>;
    fn add(self, rhs: &Lin<K>) -> Lin<K> {
        let mut out = self.clone();
        out.add_scaled(rhs, 1);
        out
    }
}

impl<K: Ord + Clone> std::ops::Sub for &Lin<K> {
    type Output = Lin<K>;
    fn sub(self, rhs: &Lin<K>) -> Lin<K> {
        let mut out = self.clone();
        out.add_scaled(rhs, -1);
        out
    }
}

impl<K: Ord + Clone> FromIterator<(K, i64)> for Lin<K> {
    fn from_iter<T: IntoIterator<Item = (K, i64)>>(iter: T) -> Self {
        let mut s = Lin::new();
        for (k, c) in iter {
            s.add(k, c);
        }
        s
    }
}

/// Basis elements that print themselves.
pub trait Basis {
    fn render(&self) -> String;
}

impl Basis for CanonKey {
    fn render(&self) -> String {
        format!("[{self}]")
    }
}

impl Basis for (CanonKey, CanonKey) {
    fn render(&self) -> String {
        format!("[{}]⊗[{}]", self.0, self.1)
    }
}

impl Basis for (CanonKey, CanonKey, CanonKey) {
    fn render(&self) -> String {
        format!("[{}]⊗[{}]⊗[{}]", self.0, self.1, self.2)
    }
}

impl<K: Ord + Basis> fmt::Display for Lin<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, &c)) in self.terms.iter().enumerate() {
            let sign = if c < 0 {
                "-"
            } else if i > 0 {
                "+"
            } else {
                ""
            };
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{sign}")?;
            if i > 0 && c > 0 || c < 0 {
                write!(f, " ")?;
            }
            if c.abs() != 1 {
                write!(f, "{}·", c.abs())?;
            }
            write!(f, "{}", k.render())?;
        }
        Ok(())
    }
}

impl<K: Ord + Basis> fmt::Debug for Lin<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl ClassSum {
    /// `[{"class": key, "poset": …, "coefficient": c}]`
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.iter()
                .map(|(k, c)| json!({"class": k.to_string(), "poset": k.poset().to_json(), "coefficient": c}))
                .collect(),
        )
    }

    /// Class of a single poset.
    pub fn of(p: &Poset) -> Result<ClassSum> {
        Ok(ClassSum::term(canon_key(p)?))
    }

    /// Elements of every term, if they all agree.
    pub fn degree(&self) -> Option<usize> {
        let mut sizes = self.iter().map(|(k, _)| k.size());
        let first = sizes.next()?;
        sizes.all(|s| s == first).then_some(first)
    }
}

impl TensorSum {
    /// `[{"left": …, "right": …, "coefficient": c}]`
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.iter()
                .map(|((a, b), c)| {
                    json!({
                        "left": {"class": a.to_string(), "poset": a.poset().to_json()},
                        "right": {"class": b.to_string(), "poset": b.poset().to_json()},
                        "coefficient": c,
                    })
                })
                .collect(),
        )
    }

    /// The swap `a ⊗ b -> b ⊗ a`.
    pub fn flip(&self) -> TensorSum {
        self.map(|(a, b)| TensorSum::term((*b, *a)))
    }
}

/// `x ⊗ y`.
pub fn tensor(x: &ClassSum, y: &ClassSum) -> TensorSum {
    x.bilinear(y, |a, b| TensorSum::term((*a, *b)))
}

/// Apply a class product to both tensor factors: `(a⊗b)(c⊗d) = ac ⊗ bd`.
pub fn tensor_product(op: Product, x: &TensorSum, y: &TensorSum) -> TensorSum {
    x.bilinear(y, |(a, b), (c, d)| {
        tensor(&product_keys(op, *a, *c), &product_keys(op, *b, *d))
    })
}

/// The five binary products on classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Product {
    /// Disjoint union.
    M,
    /// Every point of the left factor below every point of the right.
    Down,
    /// Sum over orders where the right factor is an up-set.
    Star,
    /// Left factor below the maxima of the right one.
    UpTri,
    /// Minima of the right factor below the left one.
    DownTri,
}

impl Product {
    pub const ALL: [Product; 5] = [
        Product::M,
        Product::Down,
        Product::Star,
        Product::UpTri,
        Product::DownTri,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Product::M => "m",
            Product::Down => "down",
            Product::Star => "star",
            Product::UpTri => "uptri",
            Product::DownTri => "downtri",
        }
    }
}

impl fmt::Display for Product {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Product {
    type Err = Error;
    fn from_str(s: &str) -> Result<Product> {
        Product::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Document(format!("unknown product `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Coproduct {
    /// Splits the connected components.
    Delta,
    /// Cuts along up-sets.
    DStar,
}

impl FromStr for Coproduct {
    type Err = Error;
    fn from_str(s: &str) -> Result<Coproduct> {
        match s {
            "delta" => Ok(Coproduct::Delta),
            "dstar" => Ok(Coproduct::DStar),
            _ => Err(Error::Document(format!("unknown coproduct `{s}`"))),
        }
    }
}

fn key_of_rows(rows: Vec<u64>) -> CanonKey {
    canon::key_of_rows(&rows).expect("class products stay within the canonical limit")
}

fn rows_of(k: CanonKey) -> Vec<u64> {
    k.poset().rows().to_vec()
}

/// Memoised values of a pure function on small keys. The lock is not held
/// while computing, so a racing thread may duplicate work but never blocks.
struct Memo<K, V>(OnceLock<Mutex<HashMap<K, V>>>);

impl<K: Eq + Hash + Clone, V: Clone> Memo<K, V> {
    const fn new() -> Self {
        Memo(OnceLock::new())
    }

    fn get(&self, key: K, compute: impl FnOnce() -> V) -> V {
        let map = self.0.get_or_init(Default::default);
        if let Some(v) = map.lock().expect("memo lock").get(&key) {
            return v.clone();
        }
        let v = compute();
        map.lock().expect("memo lock").insert(key, v.clone());
        v
    }
}

static PRODUCTS: Memo<(Product, CanonKey, CanonKey), ClassSum> = Memo::new();
static COPRODUCTS: Memo<(Coproduct, CanonKey), TensorSum> = Memo::new();
static AUTOMORPHISMS: Memo<CanonKey, i64> = Memo::new();

/// Product of two basis classes.
pub fn product_keys(op: Product, a: CanonKey, b: CanonKey) -> ClassSum {
    PRODUCTS.get((op, a, b), || product_uncached(op, a, b))
}

fn product_uncached(op: Product, a: CanonKey, b: CanonKey) -> ClassSum {
    assert!(
        a.size() + b.size() <= CANON_LIMIT,
        "product exceeds the canonical limit"
    );
    let (ra, rb) = (rows_of(a), rows_of(b));
    let (n, m) = (ra.len(), rb.len());
    let full_b = bits::full(m) << n;
    let base = |extra: &dyn Fn(usize) -> u64| -> Vec<u64> {
        ra.iter()
            .enumerate()
            .map(|(i, r)| r | extra(i))
            .chain(rb.iter().map(|r| r << n))
            .collect()
    };
    match op {
        Product::M => ClassSum::term(key_of_rows(base(&|_| 0))),
        Product::Down => ClassSum::term(key_of_rows(base(&|_| full_b))),
        Product::UpTri => {
            let max_b = bits::maxima(&rb, bits::full(m)) << n;
            ClassSum::term(key_of_rows(base(&|_| max_b)))
        }
        Product::DownTri => {
            let min_b = bits::minima(&rb, bits::full(m));
            let mut rows = base(&|_| 0);
            for j in ones(min_b) {
                rows[n + j] |= bits::full(n);
            }
            ClassSum::term(key_of_rows(rows))
        }
        Product::Star => {
            let options = bits::up_closed_subsets(&rb, bits::full(m));
            let elems: Vec<usize> = (0..n).collect();
            let mut out = ClassSum::new();
            bits::antitone_families(&elems, &|x, y| ra[x] & bit(y) != 0, &options, &|_| 0, &mut |sets| {
                let rows = base(&|i| sets[i] << n);
                out.add(key_of_rows(rows), 1);
            });
            out
        }
    }
}

/// Bilinear extension of `op`.
pub fn product(op: Product, x: &ClassSum, y: &ClassSum) -> ClassSum {
    x.bilinear(y, |a, b| product_keys(op, *a, *b))
}

pub fn prod_m(x: &ClassSum, y: &ClassSum) -> ClassSum {
    product(Product::M, x, y)
}

pub fn prod_ordinal(x: &ClassSum, y: &ClassSum) -> ClassSum {
    product(Product::Down, x, y)
}

pub fn prod_star(x: &ClassSum, y: &ClassSum) -> ClassSum {
    product(Product::Star, x, y)
}

pub fn prod_up_tri(x: &ClassSum, y: &ClassSum) -> ClassSum {
    product(Product::UpTri, x, y)
}

pub fn prod_down_tri(x: &ClassSum, y: &ClassSum) -> ClassSum {
    product(Product::DownTri, x, y)
}

/// Coproduct of a basis class.
pub fn coproduct_key(op: Coproduct, k: CanonKey) -> TensorSum {
    COPRODUCTS.get((op, k), || coproduct_uncached(op, k))
}

fn coproduct_uncached(op: Coproduct, k: CanonKey) -> TensorSum {
    let p = k.poset();
    let all = bits::full(p.len());
    let cuts: Vec<u64> = match op {
        Coproduct::Delta => {
            let comps = p.component_masks();
            (0u64..1 << comps.len())
                .map(|s| ones(s).fold(0, |acc, i| acc | comps[i]))
                .collect()
        }
        Coproduct::DStar => bits::up_closed_subsets(p.rows(), all),
    };
    let mut out = TensorSum::new();
    for right in cuts {
        let l = canon_key(&p.restrict_mask(all & !right)).expect("within limit");
        let r = canon_key(&p.restrict_mask(right)).expect("within limit");
        out.add((l, r), 1);
    }
    out
}

pub fn coproduct(op: Coproduct, x: &ClassSum) -> TensorSum {
    x.map(|k| coproduct_key(op, *k))
}

pub fn coproduct_delta(x: &ClassSum) -> TensorSum {
    coproduct(Coproduct::Delta, x)
}

pub fn coproduct_delta_star(x: &ClassSum) -> TensorSum {
    coproduct(Coproduct::DStar, x)
}

/// `(Δ ⊗ id) Δ` and `(id ⊗ Δ) Δ`.
pub fn iterated_coproducts(op: Coproduct, x: &ClassSum) -> (Tensor3, Tensor3) {
    let once = coproduct(op, x);
    let left = once.map(|(a, b)| coproduct_key(op, *a).map(|(p, q)| Tensor3::term((*p, *q, *b))));
    let right = once.map(|(a, b)| coproduct_key(op, *b).map(|(p, q)| Tensor3::term((*a, *p, *q))));
    (left, right)
}

/// Counit: the coefficient of the empty class.
pub fn counit(x: &ClassSum) -> i64 {
    x.coefficient(&CanonKey::EMPTY)
}

/// `<A, B>` is the automorphism count of `A` if the classes agree, else 0.
pub fn pairing(x: &ClassSum, y: &ClassSum) -> i64 {
    x.iter()
        .map(|(k, c)| {
            let d = y.coefficient(k);
            if d == 0 {
                0
            } else {
                c * d * automorphisms(*k)
            }
        })
        .sum()
}

/// `<a⊗b, c⊗d> = <a,c><b,d>`.
pub fn tensor_pairing(x: &TensorSum, y: &TensorSum) -> i64 {
    x.iter()
        .map(|((a, b), c)| {
            let d = y.coefficient(&(*a, *b));
            if d == 0 {
                0
            } else {
                c * d * automorphisms(*a) * automorphisms(*b)
            }
        })
        .sum()
}

fn automorphisms(k: CanonKey) -> i64 {
    AUTOMORPHISMS.get(k, || automorphism_count(&k.poset()).expect("within limit") as i64)
}

/// Nonempty classes with at most `n_max` points, grouped by size.
pub fn classes_by_size(n_max: usize) -> Result<Vec<Vec<CanonKey>>> {
    let mut out = vec![vec![CanonKey::EMPTY]];
    for n in 1..=n_max {
        out.push(census(n)?.into_keys().collect());
    }
    Ok(out)
}

fn nonempty(by_size: &[Vec<CanonKey>]) -> Vec<CanonKey> {
    by_size.iter().skip(1).flatten().copied().collect()
}

/// Pairs of nonempty classes with at most `n_max` points each.
fn pairs(n_max: usize) -> Result<Vec<(CanonKey, CanonKey)>> {
    let all = nonempty(&classes_by_size(n_max)?);
    Ok(all.iter().flat_map(|&a| all.iter().map(move |&b| (a, b))).collect())
}

/// Triples of nonempty classes with at most `n_max` points each and at most
/// [`CANON_LIMIT`] points in total.
fn triples(n_max: usize) -> Result<Vec<(CanonKey, CanonKey, CanonKey)>> {
    let all = nonempty(&classes_by_size(n_max)?);
    let mut out = Vec::new();
    for &a in &all {
        for &b in &all {
            for &c in &all {
                if a.size() + b.size() + c.size() <= CANON_LIMIT {
                    out.push((a, b, c));
                }
            }
        }
    }
    Ok(out)
}

fn single(k: CanonKey) -> ClassSum {
    ClassSum::term(k)
}

fn eq_case<T: PartialEq + fmt::Display>(what: &str, inputs: String, lhs: T, rhs: T) -> Vec<Failure> {
    if lhs == rhs {
        Vec::new()
    } else {
        vec![Failure::new(format!("{what}: {inputs}"), &lhs, &rhs)]
    }
}

/// Associativity of `m`, `↓` and `*`, and commutativity of `m`.
pub fn verify_products(n_max: usize) -> Result<VerificationReport> {
    let cases = triples(n_max)?;
    let assoc = VerificationReport::run("product associativity", &cases, |&(a, b, c)| {
        let (x, y, z) = (single(a), single(b), single(c));
        let mut fails = Vec::new();
        for op in [Product::M, Product::Down, Product::Star] {
            let lhs = product(op, &product(op, &x, &y), &z);
            let rhs = product(op, &x, &product(op, &y, &z));
            fails.extend(eq_case(op.name(), format!("{a} {b} {c}"), lhs, rhs));
        }
        Ok((3, fails))
    });
    let cases = pairs(n_max)?;
    let comm = VerificationReport::run("m commutativity", &cases, |&(a, b)| {
        let (x, y) = (single(a), single(b));
        Ok((1, eq_case("m", format!("{a} {b}"), prod_m(&x, &y), prod_m(&y, &x))))
    });
    let mut report = VerificationReport::new("products");
    report.absorb(assoc);
    report.absorb(comm);
    Ok(report)
}

/// `x △ (y △ z) = (xy) △ z = y △ (x △ z)` and the same for `▽`.
pub fn verify_nap(n_max: usize) -> Result<VerificationReport> {
    let cases = triples(n_max)?;
    Ok(VerificationReport::run("nap", &cases, |&(a, b, c)| {
        let (x, y, z) = (single(a), single(b), single(c));
        let mut fails = Vec::new();
        for op in [Product::UpTri, Product::DownTri] {
            let nested = product(op, &x, &product(op, &y, &z));
            let merged = product(op, &prod_m(&x, &y), &z);
            let swapped = product(op, &y, &product(op, &x, &z));
            let inputs = format!("{a} {b} {c}");
            fails.extend(eq_case(op.name(), inputs.clone(), nested.clone(), merged));
            fails.extend(eq_case(op.name(), inputs, nested, swapped));
        }
        Ok((4, fails))
    }))
}

/// Coassociativity and counit of both coproducts, cocommutativity of `Δ`,
/// and grading of every product and coproduct.
pub fn verify_coalgebra(n_max: usize) -> Result<VerificationReport> {
    let by_size = classes_by_size(n_max)?;
    let classes = nonempty(&by_size);
    let co = VerificationReport::run("coalgebra", &classes, |&k| {
        let x = single(k);
        let mut fails = Vec::new();
        for op in [Coproduct::Delta, Coproduct::DStar] {
            let name = format!("{op:?}");
            let (l, r) = iterated_coproducts(op, &x);
            fails.extend(eq_case(&format!("{name} coassociativity"), k.to_string(), l, r));
            let d = coproduct(op, &x);
            let left_counit: ClassSum = d
                .iter()
                .filter(|((_, b), _)| b.size() == 0)
                .map(|((a, _), c)| (*a, c))
                .collect();
            let right_counit: ClassSum = d
                .iter()
                .filter(|((a, _), _)| a.size() == 0)
                .map(|((_, b), c)| (*b, c))
                .collect();
            fails.extend(eq_case(
                &format!("{name} counit"),
                k.to_string(),
                left_counit,
                x.clone(),
            ));
            fails.extend(eq_case(
                &format!("{name} counit"),
                k.to_string(),
                right_counit,
                x.clone(),
            ));
            if d.iter().any(|((a, b), _)| a.size() + b.size() != k.size()) {
                fails.push(Failure::text(format!("{name} grading: {k}"), &d.to_string(), ""));
            }
        }
        let d = coproduct_delta(&x);
        fails.extend(eq_case("Delta cocommutativity", k.to_string(), d.flip(), d));
        Ok((7, fails))
    });
    let cases = pairs(n_max)?;
    let graded = VerificationReport::run("product grading", &cases, |&(a, b)| {
        let (x, y) = (single(a), single(b));
        let fails = Product::ALL
            .into_iter()
            .filter(|&op| product(op, &x, &y).degree() != Some(a.size() + b.size()))
            .map(|op| Failure::text(format!("{op} grading: {a} {b}"), "", ""))
            .collect();
        Ok((Product::ALL.len(), fails))
    });
    let mut report = VerificationReport::new("coalgebra");
    report.absorb(co);
    report.absorb(graded);
    Ok(report)
}

/// `Δ*` is multiplicative for `m`, `Δ` is multiplicative for `*`, and the
/// pairing makes `m` dual to `Δ` and `*` dual to `Δ*`.
pub fn verify_bialgebra(n_max: usize) -> Result<VerificationReport> {
    let cases = pairs(n_max)?;
    let mult = VerificationReport::run("multiplicativity", &cases, |&(a, b)| {
        let (x, y) = (single(a), single(b));
        let inputs = format!("{a} {b}");
        let mut fails = eq_case(
            "Δ*(xy)",
            inputs.clone(),
            coproduct_delta_star(&prod_m(&x, &y)),
            tensor_product(Product::M, &coproduct_delta_star(&x), &coproduct_delta_star(&y)),
        );
        fails.extend(eq_case(
            "Δ(x*y)",
            inputs,
            coproduct_delta(&prod_star(&x, &y)),
            tensor_product(Product::Star, &coproduct_delta(&x), &coproduct_delta(&y)),
        ));
        Ok((2, fails))
    });

    // For each z, every split of its size into two nonempty classes.
    let by_size = classes_by_size(n_max)?;
    let triples: Vec<(CanonKey, CanonKey, CanonKey)> = nonempty(&by_size)
        .into_iter()
        .flat_map(|z| {
            let by_size = &by_size;
            (1..z.size()).flat_map(move |i| {
                by_size[i]
                    .iter()
                    .flat_map(move |&x| by_size[z.size() - i].iter().map(move |&y| (x, y, z)))
            })
        })
        .collect();
    let dual = VerificationReport::run("duality", &triples, |&(a, b, c)| {
        let (x, y, z) = (single(a), single(b), single(c));
        let xy = tensor(&x, &y);
        let inputs = format!("{a} {b} | {c}");
        let mut fails = eq_case(
            "<x*y,z> = <x⊗y,Δ*z>",
            inputs.clone(),
            pairing(&prod_star(&x, &y), &z),
            tensor_pairing(&xy, &coproduct_delta_star(&z)),
        );
        fails.extend(eq_case(
            "<xy,z> = <x⊗y,Δz>",
            inputs,
            pairing(&prod_m(&x, &y), &z),
            tensor_pairing(&xy, &coproduct_delta(&z)),
        ));
        Ok((2, fails))
    });
    let mut report = VerificationReport::new("bialgebra");
    report.absorb(mult);
    report.absorb(dual);
    Ok(report)
}

/// `Δ*(x↓y) = Δ*(x)↓(1⊗y) + (x⊗1)↓Δ*(y) − x⊗y`.
pub fn verify_infinitesimal(n_max: usize) -> Result<VerificationReport> {
    let cases = pairs(n_max)?;
    Ok(VerificationReport::run("infinitesimal", &cases, |&(a, b)| {
        let (x, y) = (single(a), single(b));
        let one = single(CanonKey::EMPTY);
        let lhs = coproduct_delta_star(&prod_ordinal(&x, &y));
        let first = tensor_product(Product::Down, &coproduct_delta_star(&x), &tensor(&one, &y));
        let second = tensor_product(Product::Down, &tensor(&x, &one), &coproduct_delta_star(&y));
        let rhs = &(&first + &second) - &tensor(&x, &y);
        Ok((1, eq_case("infinitesimal", format!("{a} {b}"), lhs, rhs)))
    }))
}

/// For each size, the Gram matrix of the pairing is diagonal with the
/// automorphism counts on the diagonal.
pub fn verify_gram(n_max: usize) -> Result<VerificationReport> {
    let by_size = classes_by_size(n_max)?;
    let mut report = VerificationReport::new("gram");
    for layer in by_size.iter().skip(1) {
        for &a in layer {
            for &b in layer {
                let v = pairing(&single(a), &single(b));
                let ok = if a == b { v > 0 && v == automorphisms(a) } else { v == 0 };
                report.check(format!("<{a},{b}> = {v}"), ok);
            }
        }
    }
    Ok(report)
}

/// `opposite(x ▽ y) = opposite(x) △ opposite(y)` on pairs of classes.
pub fn verify_opposite_duality(n_max: usize) -> Result<VerificationReport> {
    let cases = pairs(n_max)?;
    let opp = |s: &ClassSum| s.map(|k| ClassSum::term(canon_key(&k.poset().opposite()).expect("within limit")));
    Ok(VerificationReport::run("opposite duality", &cases, |&(a, b)| {
        let (x, y) = (single(a), single(b));
        Ok((
            1,
            eq_case(
                "opposite",
                format!("{a} {b}"),
                opp(&prod_down_tri(&x, &y)),
                prod_up_tri(&opp(&x), &opp(&y)),
            ),
        ))
    }))
}

/// Every Hopf-level suite at once.
pub fn verify_all(n_max: usize) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("hopf");
    for sub in [
        verify_products(n_max)?,
        verify_nap(n_max)?,
        verify_coalgebra(n_max)?,
        verify_bialgebra(n_max)?,
        verify_infinitesimal(n_max)?,
        verify_gram(n_max)?,
        verify_opposite_duality(n_max)?,
    ] {
        report.absorb(sub);
    }
    Ok(report)
}
