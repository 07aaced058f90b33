use std::io::Write;
use std::path::{Path, PathBuf};

use glt_core::dg::{build_basis, build_h_operators, extract_boundary_part, BasisReport, BoundaryCondition, PressureOperator};
use glt_core::krylov::{
    bench_iterations, pcg, rhs_sequence, write_bench_csv, BenchConfig, Identity, Preconditioner, SolverConfig,
    SolverKind, StoppingRule, StrangPreconditioner,
};
use glt_core::spectra::{
    build_report, default_cache_dir, lattice_spectrum, CacheStatus, ReferenceIntervals, SpectralReport,
};
use glt_core::structured::{BlockCirculant, BlockLattice, BlockToeplitz};
use glt_core::symbol::{builtin_dg_symbol, det_taylor_at_origin, det_taylor_finite_difference, sample_eigs, GridKind, MatrixSymbol};
use glt_core::rational::format_rational;
use glt_core::{Error, Result};
use serde_json::{json, Value};

use crate::{Bc, BenchArgs, Cli, Command, Common, ExportCmd, Grid, Pre, SingleArgs, SolveArgs, SpectraCmd, Stop, SweepArgs, SymbolCmd};

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::SizeGuard { .. } => 3,
        _ => 2,
    }
}

pub fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Symbol { cmd, common } => symbol(cmd, &common),
        Command::Spectra { cmd, common } => spectra(cmd, &common),
        Command::Solve { args, common } => solve(&args, &common),
        Command::Bench { args, common } => bench(&args, &common),
        Command::Export { cmd, common } => export(cmd, &common),
    }
}

fn emit(common: &Common, bytes: &[u8]) -> Result<()> {
    match &common.out {
        Some(path) => std::fs::write(path, bytes)?,
        None => std::io::stdout().lock().write_all(bytes)?,
    }
    Ok(())
}

fn emit_json(common: &Common, v: &Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(v)?;
    text.push('\n');
    emit(common, text.as_bytes())
}

fn grid(g: Grid) -> GridKind {
    match g {
        Grid::Half => GridKind::Half,
        Grid::Periodic => GridKind::Periodic,
    }
}

fn bc(b: Bc) -> BoundaryCondition {
    match b {
        Bc::Dirichlet => BoundaryCondition::Dirichlet,
        Bc::Periodic => BoundaryCondition::Periodic,
    }
}

fn stopping(s: Stop) -> StoppingRule {
    match s {
        Stop::Initial => StoppingRule::Initial,
        Stop::Rhs => StoppingRule::Rhs,
    }
}

/// The `--symbol` file, the builtin table for `p = 2`, or the assembled interior symbol.
fn load_symbol(common: &Common) -> Result<MatrixSymbol> {
    if let Some(path) = &common.symbol {
        return MatrixSymbol::read_json(path);
    }
    if common.p == 2 {
        return builtin_dg_symbol(2);
    }
    Ok(PressureOperator::dg(common.p, 4, 4, BoundaryCondition::Periodic)?.interior_symbol().clone())
}

/// `a:b:c` (inclusive), a comma list, or a single size.
pub fn parse_sizes(text: &str) -> Result<Vec<usize>> {
    let bad = || Error::InvalidArgument(format!("invalid size list {text:?}"));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let sizes: Vec<usize> = if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        let (a, b, c) = match parts.as_slice() {
            [a, b] => (num(a)?, num(b)?, 1),
            [a, b, c] => (num(a)?, num(b)?, num(c)?),
            _ => return Err(bad()),
        };
        if c == 0 {
            return Err(bad());
        }
        (a..=b).step_by(c).collect()
    } else {
        text.split(',').filter(|s| !s.trim().is_empty()).map(num).collect::<Result<_>>()?
    };
    if sizes.is_empty() {
        return Err(Error::InvalidArgument(format!("empty size sweep {text:?}")));
    }
    Ok(sizes)
}

fn symbol(cmd: SymbolCmd, common: &Common) -> Result<u8> {
    let sym = load_symbol(common)?;
    match cmd {
        SymbolCmd::Eval { theta } => {
            if theta.len() != 2 {
                return Err(Error::InvalidArgument(format!("--theta takes two angles, got {}", theta.len())));
            }
            let f = sym.eval([theta[0], theta[1]]);
            let s = sym.s();
            let re: Vec<Vec<f64>> = (0..s).map(|i| (0..s).map(|j| f[(i, j)].re).collect()).collect();
            let im: Vec<Vec<f64>> = (0..s).map(|i| (0..s).map(|j| f[(i, j)].im).collect()).collect();
            let row_sums: Vec<f64> = re.iter().map(|r| r.iter().sum()).collect();
            emit_json(
                common,
                &json!({
                    "theta": theta,
                    "s": s,
                    "re": re,
                    "im": im,
                    "row_sums": row_sums,
                    "eigenvalues": sym.eigenvalues_at([theta[0], theta[1]])?,
                }),
            )?;
        }
        SymbolCmd::Sample { n, grid: g } => {
            let sample = sample_eigs(&sym, n, grid(g))?;
            let mut buf = Vec::new();
            sample.write_csv(&mut buf)?;
            emit(common, &buf)?;
        }
        SymbolCmd::DetTaylor { h } => {
            let t = det_taylor_at_origin(&sym)?;
            let fd = det_taylor_finite_difference(&sym, h);
            let exact = t.exact.as_ref().map(|e| {
                json!({
                    "value": format_rational(&e.value),
                    "gradient": e.gradient.iter().map(format_rational).collect::<Vec<_>>(),
                    "hessian": e.hessian.iter().map(|r| r.iter().map(format_rational).collect::<Vec<_>>()).collect::<Vec<_>>(),
                })
            });
            emit_json(
                common,
                &json!({
                    "value": t.value,
                    "gradient": t.gradient,
                    "hessian": t.hessian,
                    "exact": exact,
                    "finite_difference": {"h": h, "value": fd.value, "gradient": fd.gradient, "hessian": fd.hessian},
                }),
            )?;
        }
        SymbolCmd::Intervals { n, grid: g, cache_dir } => {
            let (iv, status) = reference(&sym, n, grid(g), cache_dir.as_deref())?;
            eprintln!("cache: {}", cache_name(status));
            emit_json(common, &serde_json::to_value(&iv)?)?;
        }
        SymbolCmd::Export => emit_json(common, &serde_json::to_value(sym.to_json())?)?,
    }
    Ok(0)
}

fn cache_name(s: CacheStatus) -> &'static str {
    match s {
        CacheStatus::Hit => "hit",
        CacheStatus::Computed => "computed",
        CacheStatus::Replaced => "replaced",
    }
}

fn reference(sym: &MatrixSymbol, n: usize, g: GridKind, dir: Option<&Path>) -> Result<(ReferenceIntervals, CacheStatus)> {
    let dir: PathBuf = dir.map(Path::to_path_buf).unwrap_or_else(default_cache_dir);
    ReferenceIntervals::load_or_compute(sym, n, g, &dir)
}

fn dirichlet(common: &Common, n: usize) -> Result<PressureOperator> {
    PressureOperator::dg(common.p, n, n, BoundaryCondition::Dirichlet)
}

fn check_guard(op: &PressureOperator, guard: usize) -> Result<()> {
    let order = op.lattice().order();
    if order > guard {
        return Err(Error::SizeGuard { order, limit: guard });
    }
    Ok(())
}

fn spectral_report(common: &Common, n: usize, reference_n: usize, cache: Option<&Path>, guard: usize) -> Result<SpectralReport> {
    let op = dirichlet(common, n)?;
    check_guard(&op, guard)?;
    let sym = match &common.symbol {
        Some(_) => load_symbol(common)?,
        None => op.interior_symbol().clone(),
    };
    let (iv, _) = reference(&sym, reference_n, GridKind::Half, cache)?;
    let eigs = lattice_spectrum(&op.to_csr(), op.lattice(), guard)?;
    let local = sample_eigs(&sym, n, GridKind::Half)?;
    build_report("K_N", &eigs, op.lattice(), &iv, &local)
}

fn sweep_reports(common: &Common, a: &SweepArgs) -> Result<Vec<SpectralReport>> {
    let sizes = parse_sizes(&a.sizes)?;
    for &n in &sizes {
        let s = (common.p + 1) * (common.p + 1);
        if s * n * n > a.guard {
            return Err(Error::SizeGuard { order: s * n * n, limit: a.guard });
        }
    }
    sizes.iter().map(|&n| spectral_report(common, n, a.reference_n, a.cache_dir.as_deref(), a.guard)).collect()
}

fn spectra(cmd: SpectraCmd, common: &Common) -> Result<u8> {
    let mut out = Vec::new();
    match cmd {
        SpectraCmd::Table1(a) => {
            writeln!(out, "n,N,inside_m1_M1,expected,outliers")?;
            for r in sweep_reports(common, &a)? {
                let c = &r.interval_counts[0];
                let inside = r.rows.iter().filter(|e| e.value >= r.reference_intervals[0].0 - 1e-12 && e.value <= r.reference_intervals[0].1 + 1e-12).count();
                writeln!(out, "{},{},{},{},{}", r.lattice.n1, r.lattice.order(), inside, c.expected, r.outliers.deficit)?;
            }
        }
        SpectraCmd::Table2(a) => {
            writeln!(out, "n,N,deficit,above_max,residual_outliers,four_n")?;
            for r in sweep_reports(common, &a)? {
                let o = &r.outliers;
                writeln!(out, "{},{},{},{},{},{}", r.lattice.n1, r.lattice.order(), o.deficit, o.exceedance, o.residual_total, 4 * r.lattice.n1)?;
            }
        }
        SpectraCmd::Table3 { sizes } => {
            writeln!(out, "n,N,rank,expected_rank,psd,min_eigenvalue")?;
            for n in parse_sizes(&sizes)? {
                let op = dirichlet(common, n)?;
                let rep = extract_boundary_part(&op)?.report;
                let s = op.lattice().s;
                let expected = 4 * s * (n - 1);
                writeln!(out, "{},{},{},{},{},{:?}", n, op.lattice().order(), rep.rank, expected, rep.psd, rep.min_eigenvalue)?;
            }
        }
        SpectraCmd::Compare(a) => {
            let r = single(common, &a)?;
            let sym = match &common.symbol {
                Some(_) => load_symbol(common)?,
                None => dirichlet(common, a.n)?.interior_symbol().clone(),
            };
            let mut sample = sample_eigs(&sym, a.n, GridKind::Half)?.concatenated();
            sample.sort_by(f64::total_cmp);
            writeln!(out, "index,eigenvalue,symbol_sample")?;
            for (row, v) in r.rows.iter().zip(&sample) {
                writeln!(out, "{},{:?},{:?}", row.index, row.value, v)?;
            }
        }
        SpectraCmd::Blocks(a) => single(common, &a)?.write_csv(&mut out)?,
        SpectraCmd::Report(a) => {
            let r = single(common, &a)?;
            let v = json!({
                "n": a.n,
                "N": r.lattice.order(),
                "reference_n": r.reference_n,
                "reference_intervals": r.reference_intervals,
                "groups": r.groups,
                "interval_counts": r.interval_counts,
                "partition_sizes": r.partition_sizes,
                "outliers": r.outliers,
            });
            let mut text = serde_json::to_string_pretty(&v)?;
            text.push('\n');
            out = text.into_bytes();
        }
    }
    emit(common, &out)?;
    Ok(0)
}

fn single(common: &Common, a: &SingleArgs) -> Result<SpectralReport> {
    spectral_report(common, a.n, a.reference_n, a.cache_dir.as_deref(), a.guard)
}

fn solve(a: &SolveArgs, common: &Common) -> Result<u8> {
    if a.pre == Pre::Both {
        return Err(Error::InvalidArgument("solve takes --pre none or --pre strang".into()));
    }
    let op = PressureOperator::dg(common.p, a.n, a.n, bc(a.bc))?;
    let lat = op.lattice();
    let cfg = BenchConfig { p: common.p, bc: bc(a.bc), steps: 2, seed: a.seed, ..BenchConfig::default() };
    let seq = rhs_sequence(lat, &cfg);
    let pre: Box<dyn Preconditioner> = match a.pre {
        Pre::Strang => {
            let sym = match &common.symbol {
                Some(_) => load_symbol(common)?,
                None => op.interior_symbol().clone(),
            };
            Box::new(StrangPreconditioner::build(&sym, lat)?)
        }
        _ => Box::new(Identity(lat.order())),
    };
    let scfg = SolverConfig { tol: a.tol, max_iter: a.max_iter, stopping: stopping(a.stop) };
    let (mut x, mut rep) = pcg(&op, pre.as_ref(), &seq[0], &seq[0], &scfg)?;
    if a.warm {
        (x, rep) = pcg(&op, pre.as_ref(), &seq[1], &x, &scfg)?;
    }
    if !a.history {
        rep.residual_history.clear();
    }
    if !a.timing {
        rep.wall_time_ms = None;
    }
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    let mut v = serde_json::to_value(&rep)?;
    if !a.history {
        v.as_object_mut().expect("object").remove("residual_history");
    }
    let v = json!({
        "n": a.n,
        "N": lat.order(),
        "bc": bc(a.bc),
        "warm": a.warm,
        "seed": a.seed,
        "solution_norm": norm,
        "report": v,
    });
    emit_json(common, &v)?;
    Ok(if rep.converged { 0 } else { 4 })
}

fn bench(a: &BenchArgs, common: &Common) -> Result<u8> {
    let sizes = parse_sizes(&a.sizes)?;
    let solvers = match a.pre {
        Pre::None => vec![SolverKind::Cg],
        Pre::Strang => vec![SolverKind::Pcg],
        Pre::Both => vec![SolverKind::Cg, SolverKind::Pcg],
    };
    let cfg = BenchConfig {
        p: common.p,
        bc: bc(a.bc),
        solver: SolverConfig { tol: a.tol, max_iter: a.max_iter, stopping: stopping(a.stop) },
        solvers,
        steps: a.steps,
        drift: a.drift,
        seed: a.seed,
    };
    let rows = bench_iterations(&sizes, &cfg)?;
    for r in &rows {
        if let Some(e) = &r.error {
            eprintln!("n={} {}: {e}", r.n, r.solver.name());
        }
    }
    let mut out = Vec::new();
    write_bench_csv(&rows, a.timing, &mut out)?;
    emit(common, &out)?;
    Ok(if rows.iter().all(|r| r.converged_all) { 0 } else { 4 })
}

fn export(cmd: ExportCmd, common: &Common) -> Result<u8> {
    let mut out = Vec::new();
    match cmd {
        ExportCmd::Operator { n, bc: b } => {
            PressureOperator::dg(common.p, n, n, bc(b))?.to_csr().write_matrix_market(&mut out)?
        }
        ExportCmd::Toeplitz { n } => {
            let sym = load_symbol(common)?;
            let lat = BlockLattice::square(n, sym.s())?;
            BlockToeplitz::new(sym, lat)?.to_csr().write_matrix_market(&mut out)?
        }
        ExportCmd::Circulant { n } => {
            let sym = load_symbol(common)?;
            let lat = BlockLattice::square(n, sym.s())?;
            BlockCirculant::new(sym, lat)?.to_csr().write_matrix_market(&mut out)?
        }
        ExportCmd::SpectralBlocks { n } => {
            let sym = load_symbol(common)?;
            let lat = BlockLattice::square(n, sym.s())?;
            let circ = BlockCirculant::new(sym, lat)?;
            let s = lat.s;
            let blocks: Vec<Value> = circ
                .spectral_blocks()
                .iter()
                .enumerate()
                .map(|(r, b)| {
                    let re: Vec<Vec<f64>> = (0..s).map(|i| (0..s).map(|j| b[(i, j)].re).collect()).collect();
                    let im: Vec<Vec<f64>> = (0..s).map(|i| (0..s).map(|j| b[(i, j)].im).collect()).collect();
                    json!({"r": [r / lat.n2, r % lat.n2], "theta": circ.theta(r), "re": re, "im": im})
                })
                .collect();
            return emit_json(common, &json!({"n": n, "s": s, "blocks": blocks})).map(|_| 0);
        }
        ExportCmd::BoundaryReport { n } => {
            let op = dirichlet(common, n)?;
            return emit_json(common, &serde_json::to_value(extract_boundary_part(&op)?.report)?).map(|_| 0);
        }
        ExportCmd::Basis => {
            let basis = build_basis(common.p)?;
            let h = build_h_operators(&basis)?;
            return emit_json(common, &serde_json::to_value(BasisReport::new(&basis, &h))?).map(|_| 0);
        }
    }
    emit(common, &out)?;
    Ok(0)
}
