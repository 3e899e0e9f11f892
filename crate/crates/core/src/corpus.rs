//! Seeded generators for rows, matrices, cones and monoids, and the
//! manifest-carrying corpus writer built on them.
//!
//! Item `k` of a corpus draws from its own ChaCha stream `k`, so items can be
//! generated in any order (or in parallel) with identical output.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::coeff_rings::{IdealDescriptor, RingDescriptor, Scalar};
use crate::geometry::AffineMonoid;
use crate::groups::{self, token_from_shape, token_shapes, FormKind, GroupWord, Token};
use crate::io::config::{ExperimentConfig, Family};
use crate::io::json::{self, Carrier};
use crate::monoid_ring::{MonoidRing, Poly};
use crate::par;
use crate::reduction::check_unimodular;
use crate::ring::Ring;

/// Rejection sampling gives up after this many draws.
const MAX_DRAWS: usize = 10_000;

pub fn item_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform element of a finite coefficient ring, small integers otherwise.
pub fn random_scalar(rng: &mut impl Rng, r: &RingDescriptor) -> Scalar {
    match r {
        RingDescriptor::IntegersMod(n) => Scalar::Mod(rng.gen_range(0..*n)),
        RingDescriptor::Excision { base, .. } => {
            let a = random_scalar(rng, base);
            let i = random_scalar(rng, base);
            let ideal = r.excision_parts().expect("excision").1;
            Scalar::pair(a, base.mul(&i, ideal.principal()))
        }
        _ => r.int(rng.gen_range(-9i64..=9)),
    }
}

fn nonzero_scalar(rng: &mut impl Rng, r: &RingDescriptor) -> Scalar {
    loop {
        let x = random_scalar(rng, r);
        if !r.is_zero(&x) {
            return x;
        }
    }
}

/// A token of uniformly chosen shape carrying `lam`.
pub fn random_token<E: Clone>(rng: &mut impl Rng, shapes: &[(usize, usize)], lam: E) -> Token<E> {
    token_from_shape(*shapes.choose(rng).expect("nonempty shape list"), lam)
}

/// A word of `len` uniformly chosen tokens with uniform parameters.
pub fn random_word(rng: &mut impl Rng, r: &RingDescriptor, form: FormKind, len: usize) -> GroupWord<Scalar> {
    let shapes = token_shapes(form);
    let tokens = (0..len)
        .map(|_| {
            let lam = random_scalar(rng, r);
            random_token(rng, &shapes, lam)
        })
        .collect();
    GroupWord::from_tokens(form, tokens)
}

/// Token shapes whose matrices fix the column `e_{2n}`: `ge_ij` needs
/// `j != 2n` and `sigma(i) != 2n`; `se_i` needs `sigma(i) != 2n`.
pub fn fixing_shapes(form: FormKind) -> Vec<(usize, usize)> {
    let size = form.size();
    token_shapes(form)
        .into_iter()
        .filter(|&(i, j)| j != size && i != size - 1)
        .collect()
}

pub fn fixing_word(rng: &mut impl Rng, r: &RingDescriptor, form: FormKind, len: usize) -> GroupWord<Scalar> {
    let shapes = fixing_shapes(form);
    let tokens = (0..len)
        .map(|_| {
            let lam = random_scalar(rng, r);
            random_token(rng, &shapes, lam)
        })
        .collect();
    GroupWord::from_tokens(form, tokens)
}

/// A unimodular row over `Z/n`. Symplectic rows are uniform among rows
/// whose entries generate the unit ideal; orthogonal rows are `e_1` moved by
/// a random word, hence isotropic.
pub fn unimodular_row(rng: &mut impl Rng, r: &RingDescriptor, form: FormKind) -> Vec<Scalar> {
    let n = r.modulus().expect("unimodular rows are drawn over Z/n");
    let size = form.size();
    if form.is_symplectic() {
        for _ in 0..MAX_DRAWS {
            let u: Vec<Scalar> = (0..size).map(|_| Scalar::Mod(rng.gen_range(0..n))).collect();
            let g = u.iter().fold(n, |acc, x| crate::arith::gcd_u64(acc, x.as_mod().unwrap()));
            if g == 1 {
                return u;
            }
        }
        unreachable!("a random row is unimodular with positive probability")
    } else {
        let w = random_word(rng, r, form, 3 * size);
        groups::act_on_row(r, &groups::unit_row(r, size, 1), &w).expect("valid word")
    }
}

/// A row `e_1 + (i_1, ..., i_2n)` with every `i_k` in `ideal`. For
/// orthogonal forms `i_2` is solved from `q(u) = 0`; it stays in the ideal
/// because `u_1` is a unit.
pub fn radical_row(rng: &mut impl Rng, r: &RingDescriptor, form: FormKind, ideal: &IdealDescriptor) -> Vec<Scalar> {
    let g = ideal.principal().clone();
    let size = form.size();
    let mut u: Vec<Scalar> = (0..size).map(|_| r.mul(&random_scalar(rng, r), &g)).collect();
    u[0] = r.add(&r.one(), &u[0]);
    if !form.is_symplectic() {
        let rest = (2..=form.n).fold(r.zero(), |acc, k| r.add(&acc, &r.mul(&u[2 * k - 2], &u[2 * k - 1])));
        let inv = r.inverse(&u[0]).expect("1 + i is a unit for i in the ideal");
        u[1] = r.neg(&r.mul(&inv, &rest));
    }
    u
}

/// Two independent rays with coordinates in `[-bound, bound]`.
pub fn random_cone(rng: &mut impl Rng, bound: i64) -> [Vec<i64>; 2] {
    loop {
        let a = vec![rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound)];
        let b = vec![rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound)];
        if a[0] * b[1] - a[1] * b[0] != 0 {
            return [a, b];
        }
    }
}

fn monoid(gens: &[&[i64]]) -> AffineMonoid {
    AffineMonoid::new(gens.iter().map(|g| g.to_vec()).collect()).expect("corpus monoids are valid")
}

/// Thirty positive affine monoids of ranks 1 to 4: free monoids, numerical
/// monoids, rank-2 cones with and without holes, products, and cones over
/// polygons.
pub fn monoid_corpus() -> Vec<(&'static str, AffineMonoid)> {
    vec![
        ("free-1", AffineMonoid::free(1)),
        ("free-2", AffineMonoid::free(2)),
        ("free-3", AffineMonoid::free(3)),
        ("numerical-2-3", monoid(&[&[2], &[3]])),
        ("numerical-2-5", monoid(&[&[2], &[5]])),
        ("numerical-3-4", monoid(&[&[3], &[4]])),
        ("numerical-3-4-5", monoid(&[&[3], &[4], &[5]])),
        ("numerical-4-6-9", monoid(&[&[4], &[6], &[9]])),
        ("scaled-2-4", monoid(&[&[2], &[4]])),
        ("scaled-6-9", monoid(&[&[6], &[9]])),
        ("veronese-2", monoid(&[&[2, 0], &[1, 1], &[0, 2]])),
        ("veronese-3", monoid(&[&[3, 0], &[2, 1], &[1, 2], &[0, 3]])),
        ("veronese-3-gap", monoid(&[&[3, 0], &[2, 1], &[0, 3]])),
        ("seminormal-plane", monoid(&[&[1, 0], &[1, 1], &[0, 2]])),
        ("cone-0-3", monoid(&[&[1, 0], &[1, 1], &[1, 2], &[1, 3]])),
        ("cone-0-3-gap", monoid(&[&[1, 0], &[1, 1], &[1, 3]])),
        ("cone-two-rays", monoid(&[&[1, 0], &[1, 2]])),
        ("cone-wide", monoid(&[&[2, -1], &[1, 0], &[1, 1], &[2, 1]])),
        ("cone-skew", monoid(&[&[1, 0], &[2, 3], &[1, 1], &[1, 2]])),
        ("free-times-cusp", monoid(&[&[1, 0], &[0, 2], &[0, 3]])),
        ("cusp-times-cusp", monoid(&[&[2, 0], &[3, 0], &[0, 2], &[0, 3]])),
        ("plane-without-1-0", monoid(&[&[2, 0], &[3, 0], &[1, 1], &[0, 1]])),
        ("square", monoid(&[&[0, 0, 1], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1]])),
        ("square-gap", monoid(&[&[0, 0, 1], &[2, 0, 1], &[0, 2, 1], &[2, 2, 1]])),
        ("simplex-gap", monoid(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 2]])),
        ("simplex-filled", monoid(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 2], &[1, 1, 1]])),
        ("pentagon", monoid(&[&[0, 0, 1], &[1, 0, 1], &[2, 1, 1], &[1, 2, 1], &[0, 1, 1]])),
        ("pyramid-over-square", monoid(&[&[0, 0, 0, 1], &[1, 0, 0, 1], &[0, 1, 0, 1], &[1, 1, 0, 1], &[0, 0, 1, 1]])),
        ("free-times-cusp-3", monoid(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 2], &[0, 0, 3]])),
        ("hexagon", monoid(&[&[1, 0, 1], &[2, 1, 1], &[2, 2, 1], &[1, 2, 1], &[0, 1, 1], &[0, 0, 1]])),
    ]
}

/// A random element of `R[M]` supported in coordinate sum `<= degree`; each
/// member is present with probability one half.
pub fn random_poly(rng: &mut impl Rng, mr: &MonoidRing<RingDescriptor>, degree: i64) -> Poly<Scalar> {
    let members = mr.members_up_to(degree).expect("corpus monoid rings have positive generators");
    let mut terms = Vec::new();
    for m in members {
        if rng.gen_bool(0.5) {
            terms.push((m, nonzero_scalar(rng, mr.coeffs())));
        }
    }
    mr.from_terms(terms).expect("members are in the monoid")
}

fn acceptable_row(
    mr: &MonoidRing<RingDescriptor>,
    form: FormKind,
    u: &[Poly<Scalar>],
    degree: i64,
    witness_bound: Option<i64>,
) -> bool {
    let within = u.iter().all(|f| f.support_degree().unwrap_or(0) <= degree);
    if !within || u.iter().any(|f| mr.is_unit(f)) {
        return false;
    }
    if !form.is_symplectic() && !mr.is_zero(&groups::quadratic_value(mr, u)) {
        return false;
    }
    matches!(check_unimodular(mr, u, witness_bound), Ok(Some(_)))
}

/// A row of `R[M]` drawn from the elementary orbit of `e_1`: `e_1` moved by
/// between 2 and `2 size` tokens whose parameters are random monomials of
/// degree `<= degree`, kept when the support degree stays `<= degree`, no
/// entry is a unit and a witness is found.
pub fn orbit_monoid_ring_row(
    rng: &mut impl Rng,
    mr: &MonoidRing<RingDescriptor>,
    form: FormKind,
    degree: i64,
    witness_bound: Option<i64>,
) -> Option<Vec<Poly<Scalar>>> {
    let size = form.size();
    let members = mr.members_up_to(degree).ok()?;
    let shapes = token_shapes(form);
    for _ in 0..MAX_DRAWS {
        let mut u = groups::unit_row(mr, size, 1);
        for _ in 0..rng.gen_range(2..=2 * size) {
            let m = members.choose(rng)?.clone();
            let c = nonzero_scalar(rng, mr.coeffs());
            let t = random_token(rng, &shapes, mr.monomial(&m, c).expect("member"));
            groups::apply_token(mr, form, &mut u, &t);
        }
        if acceptable_row(mr, form, &u, degree, witness_bound) {
            return Some(u);
        }
    }
    None
}

/// A row of independent random elements of support degree `<= degree`,
/// kept when no entry is a unit, the row is isotropic (orthogonal forms)
/// and a witness is found within the bound.
pub fn random_monoid_ring_row(
    rng: &mut impl Rng,
    mr: &MonoidRing<RingDescriptor>,
    form: FormKind,
    degree: i64,
    witness_bound: Option<i64>,
) -> Option<Vec<Poly<Scalar>>> {
    for _ in 0..MAX_DRAWS {
        let u: Vec<Poly<Scalar>> = (0..form.size()).map(|_| random_poly(rng, mr, degree)).collect();
        if acceptable_row(mr, form, &u, degree, witness_bound) {
            return Some(u);
        }
    }
    None
}

/// A row over a polynomial ring whose restriction to `t_1 = 0` is unimodular.
pub fn nagata_row(
    rng: &mut impl Rng,
    mr: &MonoidRing<RingDescriptor>,
    form: FormKind,
    degree: i64,
) -> Option<Vec<Poly<Scalar>>> {
    for _ in 0..MAX_DRAWS {
        let u: Vec<Poly<Scalar>> = (0..form.size()).map(|_| random_poly(rng, mr, degree)).collect();
        let restricted: Vec<Poly<Scalar>> = u.iter().map(|f| mr.evaluate_at_t1_zero(f)).collect::<Result<_, _>>().ok()?;
        if check_unimodular(mr, &restricted, None).ok()?.is_some() {
            return Some(u);
        }
    }
    None
}

/// A generated data set: file names with canonical JSON contents, plus a
/// manifest recording the configuration and a sha256 per file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corpus {
    pub files: Vec<(String, String)>,
    pub manifest: String,
}

pub fn sha256_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

fn scalar_items(cfg: &ExperimentConfig, r: &RingDescriptor) -> Result<Vec<(String, Value)>, crate::io::IoError> {
    let forms = cfg.forms()?;
    let ideal = cfg.ideal_in(r)?;
    let jobs: Vec<(usize, FormKind)> = forms.iter().flat_map(|&f| (0..cfg.count).map(move |k| (k, f))).collect();
    Ok(par::map(&jobs, |&(k, form)| {
        let mut rng = item_rng(cfg.seed, (form.size() * 1_000_000 + k) as u64);
        let name = format!("{}-{}{}-{k:05}.json", family_tag(cfg.family), kind_tag(form), form.size());
        let doc = match cfg.family {
            Family::Unimodular => json::row_document(r, form, &unimodular_row(&mut rng, r, form), None),
            Family::Radical => {
                let i = ideal.as_ref().expect("validated");
                json::row_document(r, form, &radical_row(&mut rng, r, form, i), Some(i))
            }
            Family::Fixing => {
                let w = fixing_word(&mut rng, r, form, 4 * form.size());
                json::matrix_document(r, form, &groups::word_matrix(r, &w).expect("valid word"))
            }
            _ => unreachable!("validated"),
        };
        (name, doc)
    }))
}

fn monoid_ring_items(
    cfg: &ExperimentConfig,
    mr: &MonoidRing<RingDescriptor>,
) -> Result<Vec<(String, Value)>, crate::io::IoError> {
    let forms = cfg.forms()?;
    let jobs: Vec<(usize, FormKind)> = forms.iter().flat_map(|&f| (0..cfg.count).map(move |k| (k, f))).collect();
    let out = par::map(&jobs, |&(k, form)| {
        let mut rng = item_rng(cfg.seed, (form.size() * 1_000_000 + k) as u64);
        let row = match cfg.family {
            Family::MonoidRows => orbit_monoid_ring_row(&mut rng, mr, form, cfg.degree, cfg.witness_bound),
            Family::RandomMonoidRows => random_monoid_ring_row(&mut rng, mr, form, cfg.degree, cfg.witness_bound),
            Family::Nagata => nagata_row(&mut rng, mr, form, cfg.degree),
            _ => unreachable!("validated"),
        };
        let name = format!("{}-{}{}-{k:05}.json", family_tag(cfg.family), kind_tag(form), form.size());
        row.map(|u| (name, json::row_document(mr, form, &u, None)))
            .ok_or_else(|| crate::io::IoError::Config(format!("no row found for item {k}")))
    });
    out.into_iter().collect()
}

fn family_tag(f: Family) -> &'static str {
    match f {
        Family::Unimodular => "row",
        Family::Radical => "radical",
        Family::Fixing => "matrix",
        Family::MonoidRows => "mrow",
        Family::RandomMonoidRows => "mrow-random",
        Family::Nagata => "nagata",
        Family::Cones => "cone",
        Family::Monoids => "monoid",
    }
}

fn kind_tag(form: FormKind) -> &'static str {
    if form.is_symplectic() {
        "sp"
    } else {
        "o"
    }
}

/// Generates every item of `cfg` deterministically.
pub fn generate(cfg: &ExperimentConfig) -> Result<Corpus, crate::io::IoError> {
    cfg.validate()?;
    let items: Vec<(String, Value)> = match (cfg.family, cfg.carrier()?) {
        (Family::Cones, _) => (0..cfg.count)
            .map(|k| {
                let rays = random_cone(&mut item_rng(cfg.seed, k as u64), 6);
                (format!("cone-{k:05}.json"), json!({"rank": 2, "generators": rays}))
            })
            .collect(),
        (Family::Monoids, _) => monoid_corpus()
            .into_iter()
            .take(cfg.count)
            .map(|(name, m)| (format!("monoid-{name}.json"), json::monoid_to_json(&m)))
            .collect(),
        (_, Some(Carrier::Scalar(r))) => scalar_items(cfg, &r)?,
        (_, Some(Carrier::Monoid(mr))) => monoid_ring_items(cfg, &mr)?,
        (_, None) => unreachable!("validated"),
    };
    let files: Vec<(String, String)> = items.into_iter().map(|(n, v)| (n, json::to_canonical(&v))).collect();
    let manifest = json!({
        "config": serde_json::to_value(cfg).expect("config serializes"),
        "files": files.iter().map(|(n, text)| json!({"name": n, "sha256": sha256_hex(text)})).collect::<Vec<_>>(),
    });
    Ok(Corpus { files, manifest: json::to_canonical(&manifest) })
}
