use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Geometric envelope `|T(j,k)| / (j! k!) <= c * rho^(j+k)` for the Taylor
/// coefficients of a profile. `rho < 1` gives absolute convergence on the
/// closed disc.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TailBound {
    pub c: f64,
    pub rho: f64,
}

impl TailBound {
    pub fn new(c: f64, rho: f64) -> Result<Self> {
        if !(c.is_finite() && c >= 0.0) {
            return Err(Error::OutOfRange(format!(
                "tail constant {c} must be finite and non-negative"
            )));
        }
        if !(0.0..1.0).contains(&rho) {
            return Err(Error::OutOfRange(format!(
                "tail ratio {rho} must lie in [0, 1)"
            )));
        }
        Ok(Self { c, rho })
    }
}

type Generator = Arc<dyn Fn(usize, usize) -> Complex64 + Send + Sync>;
type ClosedForm = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;

#[derive(Clone)]
pub(crate) enum Source {
    /// Normalized coefficients `a(j,k) = T(j,k) / (j! k!)`; absent keys are 0.
    /// `max_order: None` means the profile is exactly this polynomial.
    Table {
        coeffs: BTreeMap<(usize, usize), Complex64>,
        max_order: Option<usize>,
    },
    Generator(Generator),
}

/// Taylor data of a profile `phi` on the closed unit disc,
/// `phi(w) = sum_{j,k} a(j,k) w^j conj(w)^k` with `a(j,k) = d^j dbar^k phi(0) / (j! k!)`.
///
/// Coefficients are stored normalized by `j! k!` so that high orders stay in
/// floating-point range.
#[derive(Clone)]
pub struct ProfileTaylor {
    label: String,
    pub(crate) source: Source,
    pub(crate) tail: Option<TailBound>,
    closed_form: Option<ClosedForm>,
}

impl fmt::Debug for ProfileTaylor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProfileTaylor")
            .field("label", &self.label)
            .field("tail", &self.tail)
            .finish_non_exhaustive()
    }
}

fn inv_factorial_power(x: f64, j: usize) -> f64 {
    // x^j / j!
    (1..=j).fold(1.0, |acc, i| acc * x / i as f64)
}

fn binomial_f64(top: usize, k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * (top - k + i) as f64 / i as f64)
}

fn i_pow(e: usize) -> Complex64 {
    match e % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

impl ProfileTaylor {
    /// Exact polynomial profile from derivative values `T(j,k)`.
    pub fn polynomial<I>(derivatives: I) -> Self
    where
        I: IntoIterator<Item = ((usize, usize), Complex64)>,
    {
        Self::table("polynomial", derivatives, None, None)
    }

    /// Profile known only through `T(j,k)` for `j, k <= max_order`, with an
    /// optional tail envelope for everything beyond.
    pub fn truncated<I>(derivatives: I, max_order: usize, tail: Option<TailBound>) -> Self
    where
        I: IntoIterator<Item = ((usize, usize), Complex64)>,
    {
        Self::table("truncated", derivatives, Some(max_order), tail)
    }

    fn table<I>(
        label: &str,
        derivatives: I,
        max_order: Option<usize>,
        tail: Option<TailBound>,
    ) -> Self
    where
        I: IntoIterator<Item = ((usize, usize), Complex64)>,
    {
        let mut coeffs = BTreeMap::new();
        for ((j, k), t) in derivatives {
            if max_order.is_some_and(|m| j > m || k > m) || t == Complex64::new(0.0, 0.0) {
                continue;
            }
            let a = t * (inv_factorial_power(1.0, j) * inv_factorial_power(1.0, k));
            *coeffs.entry((j, k)).or_insert(Complex64::new(0.0, 0.0)) += a;
        }
        Self {
            label: label.to_string(),
            source: Source::Table { coeffs, max_order },
            tail,
            closed_form: None,
        }
    }

    /// Profile whose normalized coefficients come from a closed-form
    /// generator. A tail envelope is mandatory.
    pub fn from_generator<G>(label: &str, generator: G, tail: TailBound) -> Self
    where
        G: Fn(usize, usize) -> Complex64 + Send + Sync + 'static,
    {
        Self {
            label: label.to_string(),
            source: Source::Generator(Arc::new(generator)),
            tail: Some(tail),
            closed_form: None,
        }
    }

    /// Attaches a closed-form evaluator used by [`ProfileTaylor::eval`].
    pub fn with_closed_form<F>(mut self, f: F) -> Self
    where
        F: Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    {
        self.closed_form = Some(Arc::new(f));
        self
    }

    /// `phi == 1`.
    pub fn constant() -> Self {
        Self::polynomial([((0, 0), Complex64::new(1.0, 0.0))])
            .labelled("const")
            .with_closed_form(|_| Complex64::new(1.0, 0.0))
    }

    /// `phi(w) = w^a conj(w)^b`.
    pub fn monomial(a: usize, b: usize) -> Self {
        let mut p = Self::polynomial(std::iter::empty());
        if let Source::Table { coeffs, .. } = &mut p.source {
            coeffs.insert((a, b), Complex64::new(1.0, 0.0));
        }
        p.labelled(&format!("monomial({a},{b})"))
            .with_closed_form(move |w| w.powu(a as u32) * w.conj().powu(b as u32))
    }

    /// `phi(w) = exp(i r Re w)`, so `T(j,k) = (i r / 2)^(j+k)`.
    pub fn plane_wave(r: f64) -> Result<Self> {
        if !(r.is_finite() && r >= 0.0) {
            return Err(Error::OutOfRange(format!(
                "plane-wave radius {r} must be finite and >= 0"
            )));
        }
        // max_j r^j / j! is reached at j = floor(r).
        let peak = inv_factorial_power(r, r.floor() as usize).max(1.0);
        let tail = TailBound::new(peak * peak, 0.5)?;
        let gen = move |j: usize, k: usize| {
            i_pow(j + k) * (inv_factorial_power(r / 2.0, j) * inv_factorial_power(r / 2.0, k))
        };
        Ok(Self::from_generator(&format!("plane-wave({r})"), gen, tail)
            .with_closed_form(move |w| Complex64::new(0.0, r * w.re).exp()))
    }

    /// `phi(w) = exp(Re w)`.
    pub fn exp_re() -> Self {
        let tail = TailBound { c: 1.0, rho: 0.5 };
        let gen = |j: usize, k: usize| {
            Complex64::new(
                inv_factorial_power(0.5, j) * inv_factorial_power(0.5, k),
                0.0,
            )
        };
        Self::from_generator("exp-re", gen, tail)
            .with_closed_form(|w| Complex64::new(w.re.exp(), 0.0))
    }

    /// Poisson–Szegő profile `phi(w) = (1 - r^2)^n / |1 - r w|^(2n)` for `0 <= r < 1`.
    pub fn poisson_szego(r: f64, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimensionTooSmall(n));
        }
        if !(0.0..1.0).contains(&r) {
            return Err(Error::OutOfRange(format!(
                "Poisson-Szego radius {r} must lie in [0, 1)"
            )));
        }
        let rho = 0.5 * (1.0 + r);
        let lead = (1.0 - r * r).powi(n as i32);
        // max_j C(n-1+j, j) (r/rho)^j: the sequence rises while (n+j)/(j+1) * r/rho >= 1.
        let ratio = r / rho;
        let (mut j, mut term, mut peak) = (0usize, 1.0f64, 1.0f64);
        while ratio > 0.0 && (n + j) as f64 / (j + 1) as f64 * ratio >= 1.0 {
            term *= (n + j) as f64 / (j + 1) as f64 * ratio;
            j += 1;
            peak = peak.max(term);
        }
        let tail = TailBound::new(lead * peak * peak, rho)?;
        let gen = move |j: usize, k: usize| {
            let bj = binomial_f64(n - 1 + j, j) * r.powi(j as i32);
            let bk = binomial_f64(n - 1 + k, k) * r.powi(k as i32);
            Complex64::new(lead * bj * bk, 0.0)
        };
        Ok(
            Self::from_generator(&format!("poisson-szego({r})"), gen, tail).with_closed_form(
                move |w| {
                    Complex64::new(
                        lead / (Complex64::new(1.0, 0.0) - w * r).norm_sqr().powi(n as i32),
                        0.0,
                    )
                },
            ),
        )
    }

    /// Parses a builtin profile name: `const`, `monomial(a,b)`,
    /// `plane-wave(r)`, `poisson-szego(r)` or `exp-re`. The Poisson–Szegő
    /// profile depends on the dimension `n`.
    pub fn from_name(spec: &str, n: usize) -> Result<Self> {
        let spec = spec.trim();
        let (name, args) = match spec.find('(') {
            Some(open) => {
                let close = spec
                    .strip_suffix(')')
                    .ok_or_else(|| Error::Parse(format!("missing ')' in profile '{spec}'")))?;
                let inner = &close[open + 1..];
                let args = inner
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .collect::<Vec<_>>();
                (spec[..open].trim(), args)
            }
            None => (spec, Vec::new()),
        };
        let float = |s: &str| {
            s.parse::<f64>()
                .map_err(|e| Error::Parse(format!("bad number '{s}': {e}")))
        };
        let int = |s: &str| {
            s.parse::<usize>()
                .map_err(|e| Error::Parse(format!("bad integer '{s}': {e}")))
        };
        let arity = |want: usize| {
            if args.len() == want {
                Ok(())
            } else {
                Err(Error::Parse(format!(
                    "profile '{name}' takes {want} argument(s), got {}",
                    args.len()
                )))
            }
        };
        match name {
            "const" => arity(0).map(|_| Self::constant()),
            "exp-re" => arity(0).map(|_| Self::exp_re()),
            "monomial" => {
                arity(2)?;
                Ok(Self::monomial(int(args[0])?, int(args[1])?))
            }
            "plane-wave" => {
                arity(1)?;
                Self::plane_wave(float(args[0])?)
            }
            "poisson-szego" => {
                arity(1)?;
                Self::poisson_szego(float(args[0])?, n)
            }
            _ => Err(Error::Parse(format!("unknown profile '{name}'"))),
        }
    }

    fn labelled(mut self, label: &str) -> Self {
        self.label = label.to_string();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn tail(&self) -> Option<TailBound> {
        self.tail
    }

    /// True for finitely supported profiles with no truncation.
    pub fn is_polynomial(&self) -> bool {
        matches!(
            self.source,
            Source::Table {
                max_order: None,
                ..
            }
        )
    }

    /// Normalized coefficient `a(j,k)`, or `None` when it lies beyond a
    /// truncated table.
    pub fn normalized(&self, j: usize, k: usize) -> Option<Complex64> {
        match &self.source {
            Source::Table { coeffs, max_order } => {
                if max_order.is_some_and(|m| j > m || k > m) {
                    None
                } else {
                    Some(coeffs.get(&(j, k)).copied().unwrap_or_default())
                }
            }
            Source::Generator(g) => Some(g(j, k)),
        }
    }

    /// `phi(w)`: the closed form when one is registered, otherwise the
    /// finite Taylor sum.
    pub fn eval(&self, w: Complex64) -> Result<Complex64> {
        if let Some(f) = &self.closed_form {
            return Ok(f(w));
        }
        match &self.source {
            Source::Table { coeffs, .. } => Ok(coeffs
                .iter()
                .map(|(&(j, k), a)| a * w.powu(j as u32) * w.conj().powu(k as u32))
                .sum()),
            Source::Generator(_) => Err(Error::Domain(format!(
                "profile '{}' has no closed form",
                self.label
            ))),
        }
    }

    /// Highest `j + k` present in a finite table.
    pub(crate) fn table_extent(&self) -> Option<(usize, usize)> {
        match &self.source {
            Source::Table { coeffs, .. } => Some(
                coeffs
                    .keys()
                    .fold((0, 0), |(mj, mk), &(j, k)| (mj.max(j), mk.max(k))),
            ),
            Source::Generator(_) => None,
        }
    }

    /// Reads a Taylor table `{"terms": [{"j","k","re","im"}], "max_order"?, "tail"?}`
    /// of derivative values `T(j,k)`. Without `max_order` the table is an
    /// exact polynomial.
    pub fn from_json(s: &str) -> Result<Self> {
        let doc: TaylorJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let tail = doc.tail.map(|t| TailBound::new(t.c, t.rho)).transpose()?;
        if tail.is_some() && doc.max_order.is_none() {
            return Err(Error::Parse("a tail bound requires max_order".into()));
        }
        let terms = doc
            .terms
            .into_iter()
            .map(|t| ((t.j, t.k), Complex64::new(t.re, t.im)));
        Ok(match doc.max_order {
            None => Self::polynomial(terms),
            Some(m) => Self::truncated(terms, m, tail),
        })
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TaylorJson {
    terms: Vec<TaylorTerm>,
    #[serde(default)]
    max_order: Option<usize>,
    #[serde(default)]
    tail: Option<TailBound>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TaylorTerm {
    j: usize,
    k: usize,
    re: f64,
    #[serde(default)]
    im: f64,
}
