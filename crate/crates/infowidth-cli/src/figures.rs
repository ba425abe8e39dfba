//! The reference figure tables.
//!
//! Each figure is a rectangular grid: an x column followed by one column
//! per series. Cells are `None` where a series is undefined (e.g. a
//! complexity beyond the space size), which the CSV writer renders as an
//! empty field and the SVG renderer as a gap.

use infowidth::parallel::parallel_map;
use infowidth::width::{info_width, WidthQuery};
use infowidth::{TargetSpace, WidthBackend};

use crate::args::FigureId;
use crate::reports::{asym_report, AsymFamily};
use crate::{CliError, CliResult};

/// A figure as plain numbers: headers (x column first) and rows.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureTable {
    /// Chart title.
    pub title: String,
    /// Column names; `headers[0]` is the x axis.
    pub headers: Vec<String>,
    /// One row per x value; `row[0]` is the x value and is always present.
    pub rows: Vec<Vec<Option<f64>>>,
}

/// Builds the table for a figure id.
pub fn figure_table(id: FigureId, threads: usize) -> CliResult<FigureTable> {
    match id {
        FigureId::F1a => fig1(WidthColumn::Width, threads),
        FigureId::F1b => fig1(WidthColumn::Cost, threads),
        FigureId::F2a => fig2(IdentityColumn::Information),
        FigureId::F2b => fig2(IdentityColumn::Efficiency),
        FigureId::F3a => fig3a(threads),
        FigureId::F3b => fig3b(threads),
        FigureId::F4 => fig4(threads),
    }
}

#[derive(Clone, Copy)]
enum WidthColumn {
    Width,
    Cost,
}

/// Figure 1: `I*(l)` (a) or `kappa*(l)` (b) over integer complexities
/// `l = 1..=128` for spaces of `2^n` elements, `n = 5, 6, 7`, with the
/// exact big-integer backend. Cells with `l > 2^n` are blank.
fn fig1(column: WidthColumn, threads: usize) -> CliResult<FigureTable> {
    const NS: [u32; 3] = [5, 6, 7];
    let (tag, title) = match column {
        WidthColumn::Width => ("Istar", "Information width I*(l)"),
        WidthColumn::Cost => ("kappastar", "Optimal cost kappa*(l)"),
    };
    let ls: Vec<u64> = (1..=128).collect();
    let rows = parallel_map(&ls, threads, |&l| -> Result<_, infowidth::Error> {
        let mut row = vec![Some(l as f64)];
        for n in NS {
            let size = 1u64 << n;
            if l > size {
                row.push(None);
                continue;
            }
            let space = TargetSpace::new(size)?;
            let query = WidthQuery::from_complexity(space, l as f64, Some(WidthBackend::Exact))?;
            let width = info_width(&query)?.width;
            row.push(Some(match column {
                WidthColumn::Width => width,
                WidthColumn::Cost => l as f64 / width,
            }));
        }
        Ok(row)
    })
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;
    let mut headers = vec!["l".to_string()];
    headers.extend(NS.iter().map(|n| format!("{tag}_n{n}")));
    Ok(FigureTable {
        title: title.to_string(),
        headers,
        rows,
    })
}

#[derive(Clone, Copy)]
enum IdentityColumn {
    Information,
    Efficiency,
}

/// Figure 2: information (a) or efficiency (b) of the identity property
/// against `n = 2..=64`, for class sizes `sqrt(n)`, `n`, and
/// `2^(n - sqrt(n))`.
fn fig2(column: IdentityColumn) -> CliResult<FigureTable> {
    let (tag, title) = match column {
        IdentityColumn::Information => ("I", "Information of the identity property"),
        IdentityColumn::Efficiency => ("eta", "Efficiency of the identity property"),
    };
    let mut rows = Vec::new();
    for n in 2u32..=64 {
        let nf = f64::from(n);
        let sizes = [nf.sqrt(), nf, (nf - nf.sqrt()).exp2()];
        let mut row = vec![Some(nf)];
        for gsize in sizes {
            let report = asym_report(nf, AsymFamily::Identity { gsize })?;
            row.push(match column {
                IdentityColumn::Information => Some(report.information),
                IdentityColumn::Efficiency => report.efficiency,
            });
        }
        rows.push(row);
    }
    Ok(FigureTable {
        title: title.to_string(),
        headers: vec![
            "n".to_string(),
            format!("{tag}_gsqrt"),
            format!("{tag}_gn"),
            format!("{tag}_gexp"),
        ],
        rows,
    })
}

/// Figure 3a: closed-form efficiency of the three dimension properties at
/// `d = sqrt(n)` against `n = 4..=30`.
fn fig3a(threads: usize) -> CliResult<FigureTable> {
    let ns: Vec<u32> = (4..=30).collect();
    let rows = parallel_map(&ns, threads, |&n| -> CliResult<_> {
        let nf = f64::from(n);
        let d = nf.sqrt();
        let mut row = vec![Some(nf)];
        for family in [
            AsymFamily::Ld { d },
            AsymFamily::Vdc { d },
            AsymFamily::Vd { d },
        ] {
            row.push(asym_report(nf, family)?.efficiency);
        }
        Ok(row)
    })
    .into_iter()
    .collect::<CliResult<Vec<_>>>()?;
    Ok(FigureTable {
        title: "Efficiency of the dimension properties at d = sqrt(n)".to_string(),
        headers: ["n", "eta_ld", "eta_vdc", "eta_vd"]
            .map(str::to_string)
            .to_vec(),
        rows,
    })
}

/// Exponents of the sample-size grid `m = n^a` in figure 3b.
const FIG3B_EXPONENTS: [f64; 4] = [0.01, 0.1, 0.5, 0.95];

/// Figure 3b: closed-form efficiency of the consistency property
/// (`d = sqrt(n)`, `m = n^a`) against `n = 4..=30`.
fn fig3b(threads: usize) -> CliResult<FigureTable> {
    let ns: Vec<u32> = (4..=30).collect();
    let rows = parallel_map(&ns, threads, |&n| -> CliResult<_> {
        let nf = f64::from(n);
        let d = nf.sqrt();
        let mut row = vec![Some(nf)];
        for a in FIG3B_EXPONENTS {
            let m = nf.powf(a);
            let report = asym_report(nf, AsymFamily::Vdsm { d, m })?;
            row.push(report.efficiency);
        }
        Ok(row)
    })
    .into_iter()
    .collect::<CliResult<Vec<_>>>()?;
    let mut headers = vec!["n".to_string()];
    headers.extend(FIG3B_EXPONENTS.iter().map(|a| format!("eta_a{a}")));
    Ok(FigureTable {
        title: "Efficiency of the consistency property for m = n^a".to_string(),
        headers,
        rows,
    })
}

/// Exponents of the sample-size grid `m = n^a` in figure 4.
const FIG4_EXPONENTS: [f64; 4] = [0.1, 0.2, 0.3, 0.4];

/// Figure 4: efficiency of the consistency property at `n = 10` against
/// the dimension exponent `b` (`d = n^b`, `b = 0.05..=0.50`), one series
/// per sample exponent `a` (`m = n^a`).
fn fig4(threads: usize) -> CliResult<FigureTable> {
    let n = 10.0f64;
    let bs: Vec<f64> = (1..=10).map(|k| k as f64 / 20.0).collect();
    let rows = parallel_map(&bs, threads, |&b| -> CliResult<_> {
        let d = n.powf(b);
        let mut row = vec![Some(b)];
        for a in FIG4_EXPONENTS {
            let m = n.powf(a);
            let report = asym_report(n, AsymFamily::Vdsm { d, m })?;
            let eta = report.efficiency.ok_or_else(|| {
                CliError::Usage(format!("efficiency undefined at b = {b}, a = {a}"))
            })?;
            row.push(Some(eta));
        }
        Ok(row)
    })
    .into_iter()
    .collect::<CliResult<Vec<_>>>()?;
    let mut headers = vec!["b".to_string()];
    headers.extend(FIG4_EXPONENTS.iter().map(|a| format!("eta_a{a}")));
    Ok(FigureTable {
        title: "Efficiency of the consistency property at n = 10".to_string(),
        headers,
        rows,
    })
}
