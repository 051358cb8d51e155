//! Builds a normalized comparison table from bench summaries and writes it
//! as CSV and SVG.

use satforge::evaluator::EvaluationSummary;
use satforge::report::{comparison_rows, comparison_svg, write_comparison_csv, BenchSummary};

fn bench(solver: &str, dataset: &str, par2: f64, solved: usize) -> BenchSummary {
    BenchSummary {
        solver: solver.into(),
        dataset: dataset.into(),
        summary: EvaluationSummary {
            par2,
            solved,
            instances: 20,
            valid: true,
            timeout: 10.0,
        },
    }
}

fn main() -> anyhow::Result<()> {
    let input = [
        bench("baseline", "random", 120.0, 11),
        bench("evolved", "random", 80.0, 15),
        bench("external", "random", 95.0, 14),
        bench("baseline", "pigeonhole", 160.0, 4),
        bench("evolved", "pigeonhole", 160.0, 4),
        bench("external", "pigeonhole", 40.0, 18),
    ];
    let rows = comparison_rows(&input);
    println!("{:12} {:10} {:>8} {:>6} {:>10}", "dataset", "solver", "par2", "solved", "normalized");
    for r in &rows {
        println!(
            "{:12} {:10} {:8.1} {:6} {:10.3}",
            r.dataset,
            r.solver,
            r.par2,
            r.solved,
            r.normalized.unwrap_or(f64::NAN)
        );
    }
    let out = std::env::temp_dir().join("satforge-example-report");
    std::fs::create_dir_all(&out)?;
    write_comparison_csv(&out.join("comparison.csv"), &rows)?;
    std::fs::write(out.join("comparison.svg"), comparison_svg("normalized PAR-2 score", &rows))?;
    println!("wrote {}", out.display());
    Ok(())
}
