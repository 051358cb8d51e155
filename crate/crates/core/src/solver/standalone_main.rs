// Command-line entry point appended to the spliced solver source when a
// candidate is compiled as a standalone binary.
//
//   solver <file.cnf> [--timeout <seconds>] [--seed <n>]
//
// Output follows the competition protocol: `s SATISFIABLE` plus a `v` line,
// `s UNSATISFIABLE`, or `s UNKNOWN`; exit codes 10, 20 and 0.

fn read_dimacs(text: &str) -> Result<(usize, Vec<Vec<i32>>), String> {
    let mut num_vars: Option<usize> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if line.starts_with('p') {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() < 4 || fields[1] != "cnf" {
                return Err(format!("bad header: {line}"));
            }
            num_vars = Some(fields[2].parse().map_err(|_| format!("bad header: {line}"))?);
            continue;
        }
        let n = num_vars.ok_or("clause before header")?;
        for tok in line.split_whitespace() {
            let lit: i32 = tok.parse().map_err(|_| format!("bad literal: {tok}"))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else if lit.unsigned_abs() as usize > n {
                return Err(format!("literal {lit} out of range"));
            } else {
                current.push(lit);
            }
        }
    }
    if !current.is_empty() {
        clauses.push(current);
    }
    Ok((num_vars.ok_or("missing header")?, clauses))
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let mut path = None;
    let mut timeout = None;
    let mut seed = 0u64;
    let mut i = 1;
    while i < args.len() {
        match args[i].as_str() {
            "--timeout" => {
                i += 1;
                timeout = args.get(i).and_then(|t| t.parse::<f64>().ok());
            }
            "--seed" => {
                i += 1;
                seed = args.get(i).and_then(|t| t.parse().ok()).unwrap_or(0);
            }
            other => path = Some(other.to_string()),
        }
        i += 1;
    }
    let path = match path {
        Some(p) => p,
        None => {
            eprintln!("usage: solver <file.cnf> [--timeout <seconds>] [--seed <n>]");
            std::process::exit(1);
        }
    };
    let text = match std::fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("c cannot read {path}: {e}");
            std::process::exit(1);
        }
    };
    let (num_vars, clauses) = match read_dimacs(&text) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("c parse error: {e}");
            std::process::exit(1);
        }
    };
    let mut solver = Solver::new(num_vars, &clauses, active_hooks(), seed);
    if let Some(t) = timeout.filter(|t| *t > 0.0) {
        solver.set_time_limit(Duration::from_secs_f64(t));
    }
    let status = solver.solve();
    let code = match status {
        Status::Sat => {
            let model: Vec<String> = solver.model().iter().map(|l| l.to_string()).collect();
            if model.is_empty() {
                println!("s SATISFIABLE\nv 0");
            } else {
                println!("s SATISFIABLE\nv {} 0", model.join(" "));
            }
            10
        }
        Status::Unsat => {
            println!("s UNSATISFIABLE");
            20
        }
        Status::Unknown => {
            println!("s UNKNOWN");
            0
        }
    };
    println!(
        "c conflicts {} decisions {} restarts {}",
        solver.stats.conflicts, solver.stats.decisions, solver.stats.restarts
    );
    std::process::exit(code);
}
