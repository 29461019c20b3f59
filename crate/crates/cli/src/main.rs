use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gentle_core::algebra::{series_expand, DegreeWeights, Monomial, RationalFunction, Var};
use gentle_core::cartan::{
    cartan_exact, cartan_series_oracle, det_elimination, det_formula, reduce_step, verify_duality,
};
use gentle_core::configurations::{
    closed_configurations, count_closed, count_closed_up_to_dihedral, critical_quiver_from, hz_a_n1,
    hz_polynomial_check,
};
use gentle_core::koszul::{gldim_finite, resolution};
use gentle_core::quiver::{parse_quiver, write_quiver, LocallyGentleQuiver, QuiverError, WeightFunction};

#[derive(Parser)]
#[command(name = "gentle", version, about = "Weighted locally gentle quivers and their Cartan determinants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct WeightArgs {
    /// Weight substitutions, e.g. `x_a=q^2*t,x_b=q*t`
    #[arg(long, value_name = "MAP")]
    spec: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the locally gentle axioms
    Validate { file: PathBuf },
    /// List minimal cycles with full relations and with no relations
    Cycles {
        file: PathBuf,
        #[command(flatten)]
        weights: WeightArgs,
    },
    /// Write the dual quiver
    Dual {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the weighted Cartan matrix
    Cartan {
        file: PathBuf,
        /// Expand entries as power series up to this degree
        #[arg(long, value_name = "N")]
        series: Option<u64>,
        /// Degree of each indeterminate for `--series`, e.g. `q=0,t=1` (default 1)
        #[arg(long, value_name = "MAP")]
        grading: Option<String>,
        #[command(flatten)]
        weights: WeightArgs,
    },
    /// Compute the Cartan determinant
    Det {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        #[command(flatten)]
        weights: WeightArgs,
    },
    /// Remove one full-relations cycle and report the extracted factors
    Reduce {
        file: PathBuf,
        /// Cycle number as listed by `cycles` (Z1, Z2, ...) or an arrow on it
        #[arg(long)]
        cycle: String,
        #[arg(long)]
        vertex: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        weights: WeightArgs,
    },
    /// Projective resolution of a simple module
    Koszul {
        file: PathBuf,
        #[arg(long)]
        vertex: String,
        #[arg(long, default_value_t = 10)]
        terms: usize,
    },
    /// Critical quivers from closed secant configurations of a 2n-gon
    Critical {
        #[arg(long)]
        n: usize,
        #[arg(long, group = "mode")]
        count: bool,
        /// Write one quiver file per closed configuration into this directory
        #[arg(long, group = "mode", value_name = "DIR")]
        emit: Option<PathBuf>,
        /// Count closed configurations up to rotation and reflection
        #[arg(long, group = "mode")]
        dihedral: bool,
    },
    /// Compare closed-configuration counts with the closed formula
    Hz {
        #[arg(long)]
        n: usize,
        /// Also check the full cycle-count polynomial
        #[arg(long)]
        poly: bool,
    },
    /// Run the duality, determinant and series checks on one quiver
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_degree: u64,
        #[command(flatten)]
        weights: WeightArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Formula,
    Elim,
    Both,
}

#[derive(Debug)]
enum Failure {
    /// bad input: exit 2
    Input(String),
    /// a check did not hold: exit 1, after printing the partial report
    Verification(String),
}

type Outcome = Result<String, Failure>;

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn read_quiver(path: &Path) -> Result<(gentle_core::quiver::Quiver, WeightFunction), Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let f = parse_quiver(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok((f.quiver, f.weights))
}

fn load(path: &Path, weights: Option<&WeightArgs>) -> Result<(LocallyGentleQuiver, WeightFunction), Failure> {
    let (q, w) = read_quiver(path)?;
    let lgq = q.validate().map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let w = match weights.and_then(|a| a.spec.as_deref()) {
        Some(spec) => w.specialize(lgq.quiver(), &parse_spec(spec)?).map_err(input)?,
        None => w,
    };
    Ok((lgq, w))
}

fn parse_spec(spec: &str) -> Result<HashMap<Var, Monomial>, Failure> {
    let mut map = HashMap::new();
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (lhs, rhs) = item
            .split_once('=')
            .ok_or_else(|| Failure::Input(format!("bad substitution `{item}`: expected name=monomial")))?;
        let lhs = lhs.trim();
        if !Var::is_valid_name(lhs) {
            return Err(Failure::Input(format!("bad indeterminate `{lhs}`")));
        }
        let m = Monomial::parse(rhs.trim()).map_err(|e| Failure::Input(format!("bad monomial in `{item}`: {e}")))?;
        map.insert(Var::new(lhs), m);
    }
    Ok(map)
}

fn parse_grading(spec: Option<&str>) -> Result<DegreeWeights, Failure> {
    let mut weights = DegreeWeights::uniform(1);
    for item in spec.unwrap_or("").split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (v, d) = item
            .split_once('=')
            .ok_or_else(|| Failure::Input(format!("bad grading `{item}`: expected name=degree")))?;
        let d: u32 = d.trim().parse().map_err(|_| Failure::Input(format!("bad degree in `{item}`")))?;
        weights = weights.with(Var::new(v.trim()), d);
    }
    Ok(weights)
}

fn vertex(lgq: &LocallyGentleQuiver, name: &str) -> Result<gentle_core::quiver::VertexIx, Failure> {
    lgq.quiver()
        .vertex_by_name(name)
        .ok_or_else(|| Failure::Input(QuiverError::UnknownVertex(name.into()).to_string()))
}

fn write_or_return(text: String, output: Option<&Path>) -> Outcome {
    match output {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn validate(file: &Path) -> Outcome {
    let (q, _) = read_quiver(file)?;
    match q.validate() {
        Ok(lgq) => Ok(format!(
            "locally gentle: {} vertices, {} arrows, {} relations\ngentle: {}\n",
            q.vertex_count(),
            q.arrow_count(),
            q.relation_count(),
            if lgq.is_gentle() { "yes" } else { "no" }
        )),
        Err(QuiverError::AxiomViolations(vs)) => {
            let mut out = String::from("not locally gentle\n");
            for v in vs {
                writeln!(out, "  {v}").unwrap();
            }
            Err(Failure::Verification(out))
        }
        Err(e) => Err(input(e)),
    }
}

fn cycles(file: &Path, weights: &WeightArgs) -> Outcome {
    let (lgq, w) = load(file, Some(weights))?;
    let q = lgq.quiver();
    let c = lgq.minimal_cycles();
    let mut out = String::new();
    for (k, cyc) in c.full_relations.iter().enumerate() {
        writeln!(out, "Z{} full-relations length {} weight {} {}", k + 1, cyc.len(), cyc.weight(&w), cyc.display(q)).unwrap();
    }
    for (k, cyc) in c.no_relations.iter().enumerate() {
        writeln!(out, "I{} no-relations length {} weight {} {}", k + 1, cyc.len(), cyc.weight(&w), cyc.display(q)).unwrap();
    }
    writeln!(out, "full-relations: {}, no-relations: {}", c.full_relations.len(), c.no_relations.len()).unwrap();
    writeln!(out, "critical: {}", if lgq.is_critical() { "yes" } else { "no" }).unwrap();
    Ok(out)
}

fn cartan(file: &Path, series: Option<u64>, grading: Option<&str>, weights: &WeightArgs) -> Outcome {
    let (lgq, w) = load(file, Some(weights))?;
    let c = cartan_exact(&lgq, &w);
    let Some(bound) = series else {
        return Ok(c.to_string());
    };
    let degrees = parse_grading(grading)?;
    let mut out = String::new();
    for (i, vi) in c.vertices().iter().enumerate() {
        for (j, vj) in c.vertices().iter().enumerate() {
            let s = series_expand(c.entry(i, j), &degrees, bound).map_err(input)?;
            writeln!(out, "C[{vi},{vj}] = {s}").unwrap();
        }
    }
    Ok(out)
}

fn det(file: &Path, method: Method, weights: &WeightArgs) -> Outcome {
    let (lgq, w) = load(file, Some(weights))?;
    let mut out = String::new();
    let formula = matches!(method, Method::Formula | Method::Both).then(|| det_formula(&lgq, &w));
    let elim = matches!(method, Method::Elim | Method::Both).then(|| det_elimination(&lgq, &w));
    if let Some(f) = &formula {
        writeln!(out, "formula: {f}").unwrap();
    }
    if let Some(e) = &elim {
        writeln!(out, "elimination: {e}").unwrap();
    }
    if let (Some(f), Some(e)) = (formula, elim) {
        if f == e {
            out.push_str("EQUAL\n");
        } else {
            out.push_str("DIFFERENT\n");
            return Err(Failure::Verification(out));
        }
    }
    Ok(out)
}

fn reduce(file: &Path, cycle: &str, v: &str, output: Option<&Path>, weights: &WeightArgs) -> Outcome {
    let (lgq, w) = load(file, Some(weights))?;
    let q = lgq.quiver();
    let zc = lgq.minimal_cycles().full_relations;
    let index = cycle.strip_prefix('Z').unwrap_or(cycle).parse::<usize>().ok();
    let chosen = match index {
        Some(k) if (1..=zc.len()).contains(&k) => zc[k - 1].clone(),
        Some(k) => return Err(Failure::Input(format!("no full-relations cycle Z{k}"))),
        None => {
            let a = q
                .arrow_by_name(cycle)
                .ok_or_else(|| Failure::Input(QuiverError::UnknownArrow(cycle.into()).to_string()))?;
            zc.iter()
                .find(|c| c.contains(a))
                .cloned()
                .ok_or_else(|| Failure::Input(format!("arrow {cycle} lies on no full-relations cycle")))?
        }
    };
    let v1 = vertex(&lgq, v)?;
    let r = reduce_step(&lgq, &w, &chosen, v1).map_err(input)?;
    let mut out = String::new();
    for f in &r.extracted_factors {
        writeln!(out, "factor: {f}").unwrap();
    }
    if let Some(bar) = r.merged_arrow {
        let nq = r.quiver.quiver();
        writeln!(out, "merged arrow: {} weight {}", nq.arrow_name(bar), r.weights.weight(bar)).unwrap();
    }
    let lhs = det_elimination(&lgq, &w);
    let rhs = &RationalFunction::from(r.factor_product()) * &det_elimination(&r.quiver, &r.weights);
    let ok = lhs == rhs;
    writeln!(out, "determinant identity: {}", if ok { "EQUAL" } else { "DIFFERENT" }).unwrap();
    let text = write_quiver(r.quiver.quiver(), &r.weights);
    match output {
        Some(path) => {
            write_or_return(text, Some(path))?;
        }
        None => out.push_str(&text),
    }
    if ok {
        Ok(out)
    } else {
        Err(Failure::Verification(out))
    }
}

fn koszul(file: &Path, v: &str, terms: usize) -> Outcome {
    let (lgq, _) = load(file, None)?;
    let i = vertex(&lgq, v)?;
    let r = resolution(&lgq, i, terms).map_err(input)?;
    Ok(format!(
        "{}\nglobal dimension finite: {}\n",
        r.display(&lgq),
        if gldim_finite(&lgq) { "yes" } else { "no" }
    ))
}

fn critical(n: usize, emit: Option<&Path>, dihedral: bool) -> Outcome {
    if n == 0 {
        return Err(Failure::Input("n must be positive".into()));
    }
    if dihedral {
        return Ok(format!("closed up to symmetry={}\n", count_closed_up_to_dihedral(n)));
    }
    let Some(dir) = emit else {
        return Ok(format!("closed={}\n", count_closed(n)));
    };
    std::fs::create_dir_all(dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
    let mut out = String::new();
    for (k, c) in closed_configurations(n).iter().enumerate() {
        let (lgq, w) = critical_quiver_from(c).map_err(input)?;
        let path = dir.join(format!("critical_n{n}_{:03}.quiver", k + 1));
        let text = format!("# secant configuration {c}\n{}", write_quiver(lgq.quiver(), &w));
        std::fs::write(&path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        writeln!(out, "{} {c}", path.display()).unwrap();
    }
    Ok(out)
}

fn hz(n: usize, poly: bool) -> Outcome {
    if n == 0 {
        return Err(Failure::Input("n must be positive".into()));
    }
    let closed = count_closed(n);
    let formula = hz_a_n1(n);
    let ok = formula == num_bigint::BigUint::from(closed);
    let mut out = format!("closed={closed} formula={formula} {}\n", if ok { "OK" } else { "MISMATCH" });
    let mut poly_ok = true;
    if poly {
        poly_ok = hz_polynomial_check(n);
        writeln!(out, "polynomial {}", if poly_ok { "OK" } else { "MISMATCH" }).unwrap();
    }
    if ok && poly_ok {
        Ok(out)
    } else {
        Err(Failure::Verification(out))
    }
}

fn verify(file: &Path, max_degree: u64, weights: &WeightArgs) -> Outcome {
    let (lgq, w) = load(file, Some(weights))?;
    let mut out = String::new();
    let mut ok = true;
    let mut report = |name: &str, pass: bool| {
        ok &= pass;
        writeln!(out, "{name}: {}", if pass { "OK" } else { "FAILED" }).unwrap();
    };
    report("duality", verify_duality(&lgq, &w));
    report("determinant", det_formula(&lgq, &w) == det_elimination(&lgq, &w));
    let degrees = DegreeWeights::uniform(1);
    let exact = cartan_exact(&lgq, &w);
    let oracle = cartan_series_oracle(&lgq, &w, &degrees, max_degree).map_err(input)?;
    let series_ok = oracle.iter().all(|((i, j), s)| {
        series_expand(exact.entry(i, j), &degrees, max_degree).is_ok_and(|e| &e == s)
    });
    report("series", series_ok);
    if ok {
        out.push_str("ALL OK\n");
        Ok(out)
    } else {
        Err(Failure::Verification(out))
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Validate { file } => validate(&file),
        Command::Cycles { file, weights } => cycles(&file, &weights),
        Command::Dual { file, output } => {
            let (lgq, w) = load(&file, None)?;
            write_or_return(write_quiver(lgq.dual().quiver(), &w), output.as_deref())
        }
        Command::Cartan {
            file,
            series,
            grading,
            weights,
        } => cartan(&file, series, grading.as_deref(), &weights),
        Command::Det { file, method, weights } => det(&file, method, &weights),
        Command::Reduce {
            file,
            cycle,
            vertex,
            output,
            weights,
        } => reduce(&file, &cycle, &vertex, output.as_deref(), &weights),
        Command::Koszul { file, vertex, terms } => koszul(&file, &vertex, terms),
        Command::Critical { n, emit, dihedral, .. } => critical(n, emit.as_deref(), dihedral),
        Command::Hz { n, poly } => hz(n, poly),
        Command::Verify {
            file,
            max_degree,
            weights,
        } => verify(&file, max_degree, &weights),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_maps_parse() {
        let m = parse_spec("x_a=q^2*t, x_b=q").unwrap();
        assert_eq!(m[&Var::new("x_a")].to_string(), "q^2*t");
        assert!(parse_spec("x_a").is_err());
        assert!(parse_spec("1a=q").is_err());
    }

    #[test]
    fn gradings_parse() {
        let g = parse_grading(Some("q=0,t=1")).unwrap();
        assert_eq!(g.of(Var::new("q")), 0);
        assert!(parse_grading(Some("q=x")).is_err());
    }
}
