use czonal::expansion::{
    expand_profile_with_threads, plane_wave_coefficient, poisson_szego_coefficient, ProfileTaylor,
};
use czonal::polyalg::{canonical_decompose, BiPoly};
use czonal::quadrature::{build_disc_rule, disc_integrate, integral_coefficient};
use czonal::zonal::{disc_poly, gamma_table_csv};
use serde::Serialize;

use crate::config::{Command, Format, Job};
use crate::{verify, CliError};

const DEFAULT_RADIAL: usize = 16;
const DEFAULT_ANGULAR: usize = 33;

/// Runs a job and returns the artifact text.
pub fn run(job: &Job) -> Result<String, CliError> {
    match job.command {
        Command::Decompose => decompose(job),
        Command::DiscPoly => disc_poly_cmd(job),
        Command::Expand => expand(job),
        Command::PoissonSzego => poisson_szego(job),
        Command::PlaneWave => plane_wave(job),
        Command::Quad => quad(job),
        Command::Verify => verify::run(job),
    }
}

fn read_input(job: &Job) -> Result<String, CliError> {
    let path = job
        .input
        .as_ref()
        .ok_or_else(|| CliError::Validation("--input is required".into()))?;
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn json_only(job: &Job, what: &str) -> Result<(), CliError> {
    if job.format_or(Format::Json) == Format::Csv {
        return Err(CliError::Validation(format!("{what} has no CSV form")));
    }
    Ok(())
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("artifact serializes");
    s.push('\n');
    s
}

fn max_bidegree(job: &Job) -> Result<usize, CliError> {
    job.max_bidegree
        .ok_or_else(|| CliError::Validation("--max-bidegree is required".into()))
}

fn threads() -> Result<usize, CliError> {
    match std::env::var("CZONAL_THREADS") {
        Ok(v) => v.trim().parse().map_err(|_| {
            CliError::Validation(format!(
                "CZONAL_THREADS must be a non-negative integer, got '{v}'"
            ))
        }),
        Err(_) => Ok(0),
    }
}

fn decompose(job: &Job) -> Result<String, CliError> {
    json_only(job, "decompose")?;
    let poly = BiPoly::from_json(&read_input(job)?)?;
    if let Some(n) = job.n {
        if n != poly.dimension() {
            return Err(CliError::Validation(format!(
                "--n {n} does not match the polynomial's dimension {}",
                poly.dimension()
            )));
        }
    }
    Ok(pretty(&canonical_decompose(&poly)?))
}

fn disc_poly_cmd(job: &Job) -> Result<String, CliError> {
    if job.format_or(Format::Csv) == Format::Json {
        return Err(CliError::Validation("disc-poly emits CSV only".into()));
    }
    if job.gamma {
        return Ok(gamma_table_csv(max_bidegree(job)?, job.dimension()?)?);
    }
    let (p, q) = match (job.p, job.q) {
        (Some(p), Some(q)) => (p, q),
        _ => return Err(CliError::Validation("--p and --q are required".into())),
    };
    let alpha = match job.alpha {
        Some(a) => a,
        None => job.dimension()? - 2,
    };
    Ok(disc_poly(p, q, alpha).to_csv())
}

fn load_profile(job: &Job, n: usize) -> Result<ProfileTaylor, CliError> {
    match (&job.profile, &job.input) {
        (Some(_), Some(_)) => Err(CliError::Validation(
            "give either --profile or --input, not both".into(),
        )),
        (Some(name), None) => Ok(ProfileTaylor::from_name(name, n)?),
        (None, Some(_)) => Ok(ProfileTaylor::from_json(&read_input(job)?)?),
        (None, None) => Err(CliError::Validation(
            "--profile or --input is required".into(),
        )),
    }
}

fn expand(job: &Job) -> Result<String, CliError> {
    let n = job.dimension()?;
    let profile = load_profile(job, n)?;
    let table = expand_profile_with_threads(&profile, n, max_bidegree(job)?, threads()?)?;
    Ok(match job.format_or(Format::Json) {
        Format::Json => table.to_json() + "\n",
        Format::Csv => table.to_csv(),
    })
}

fn cells(max: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..=max).flat_map(|l| (0..=l).rev().map(move |q| (l - q, q)))
}

#[derive(Serialize)]
struct RealRow {
    r: f64,
    p: usize,
    q: usize,
    s: f64,
}

#[derive(Serialize)]
struct RealTable {
    n: usize,
    rows: Vec<RealRow>,
}

fn poisson_szego(job: &Job) -> Result<String, CliError> {
    let n = job.dimension()?;
    let max = max_bidegree(job)?;
    let mut rows = Vec::new();
    for &r in job.radii()? {
        for (p, q) in cells(max) {
            rows.push(RealRow {
                r,
                p,
                q,
                s: poisson_szego_coefficient(r, p, q, n)?,
            });
        }
    }
    Ok(match job.format_or(Format::Csv) {
        Format::Json => pretty(&RealTable { n, rows }),
        Format::Csv => {
            let mut out = String::from("r,p,q,S\n");
            for row in rows {
                out.push_str(&format!("{:?},{},{},{:?}\n", row.r, row.p, row.q, row.s));
            }
            out
        }
    })
}

#[derive(Serialize)]
struct ComplexRow {
    r: f64,
    p: usize,
    q: usize,
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct ComplexTable {
    n: usize,
    rows: Vec<ComplexRow>,
}

fn plane_wave(job: &Job) -> Result<String, CliError> {
    let n = job.dimension()?;
    let max = max_bidegree(job)?;
    let mut rows = Vec::new();
    for &r in job.radii()? {
        for (p, q) in cells(max) {
            let v = plane_wave_coefficient(r, p, q, n)?;
            rows.push(ComplexRow {
                r,
                p,
                q,
                re: v.re,
                im: v.im,
            });
        }
    }
    Ok(match job.format_or(Format::Csv) {
        Format::Json => pretty(&ComplexTable { n, rows }),
        Format::Csv => {
            let mut out = String::from("r,p,q,re,im\n");
            for row in rows {
                out.push_str(&format!(
                    "{:?},{},{},{:?},{:?}\n",
                    row.r, row.p, row.q, row.re, row.im
                ));
            }
            out
        }
    })
}

#[derive(Serialize)]
struct QuadResult {
    profile: String,
    n: usize,
    alpha: usize,
    radial_points: usize,
    angular_points: usize,
    p: Option<usize>,
    q: Option<usize>,
    re: f64,
    im: f64,
}

fn quad(job: &Job) -> Result<String, CliError> {
    let n = job.dimension()?;
    let radial = job.radial_points.unwrap_or(DEFAULT_RADIAL);
    let angular = job.angular_points.unwrap_or(DEFAULT_ANGULAR);
    let rule = build_disc_rule(n - 2, radial, angular)?;
    if job.emit_rule {
        json_only(job, "a quadrature rule")?;
        return Ok(rule.to_json() + "\n");
    }
    let profile = load_profile(job, n)?;
    // Fail early rather than inside the integrand.
    profile.eval(num_complex::Complex64::new(0.0, 0.0))?;
    let phi = |w| profile.eval(w).expect("profile evaluates");
    let value = match (job.p, job.q) {
        (Some(p), Some(q)) => integral_coefficient(phi, p, q, n, &rule)?,
        (None, None) => disc_integrate(phi, &rule),
        _ => {
            return Err(CliError::Validation(
                "give both --p and --q, or neither".into(),
            ))
        }
    };
    let result = QuadResult {
        profile: profile.label().to_string(),
        n,
        alpha: n - 2,
        radial_points: radial,
        angular_points: angular,
        p: job.p,
        q: job.q,
        re: value.re,
        im: value.im,
    };
    Ok(match job.format_or(Format::Json) {
        Format::Json => pretty(&result),
        Format::Csv => {
            let idx = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
            format!(
                "profile,n,p,q,re,im\n\"{}\",{},{},{},{:?},{:?}\n",
                result.profile,
                n,
                idx(result.p),
                idx(result.q),
                result.re,
                result.im
            )
        }
    })
}
