//! Shows the prompt sent to a chat model for a two-slot rewrite, and parses
//! a reply. Set OPENAI_API_KEY and pass `--send` to make a real request.

use std::collections::BTreeMap;

use satforge::materializer::SolverTemplate;
use satforge::proposer::{
    build_prompt, parse_response, propose_llm, HttpTransport, LlmSettings, PromptRequest,
};
use satforge::slots::{HeuristicConfiguration, SlotName};

fn main() -> anyhow::Result<()> {
    let template = SolverTemplate::builtin();
    let current = HeuristicConfiguration::from_template(&template);
    let slots = [SlotName::RestartCondition, SlotName::RephaseCondition];
    let request = PromptRequest::new(slots, template.source())?;
    let prompt = build_prompt(&request)?;
    for line in prompt.lines().take_while(|l| !l.starts_with("<key code>")) {
        println!("{line}");
    }
    println!("... ({} bytes of solver source follow)\n", template.source().len());

    let reply = "Sure.\n```rust\n// start restart_condition\nfn restart_condition(s: &Solver) -> bool {\n    s.stats.conflicts_since_restart >= 2 * s.stats.restart_limit\n}\n// end restart_condition\n// start rephase_condition\nfn rephase_condition(s: &Solver) -> bool {\n    s.stats.conflicts >= s.stats.rephase_limit / 2\n}\n// end rephase_condition\n```\n";
    match parse_response(reply, &request.slots, Some(&current)) {
        Ok(bodies) => {
            let names: BTreeMap<_, _> = bodies.bodies.iter().map(|(s, b)| (s.as_str(), b.lines().count())).collect();
            println!("parsed bodies (lines): {names:?}");
        }
        Err(m) => println!("malformed: {}", m.reason),
    }

    if std::env::args().any(|a| a == "--send") {
        let settings = LlmSettings::default();
        let mut transport = HttpTransport::from_env(settings.clone())?;
        match propose_llm(&request, &current, &settings, &mut transport, None)? {
            Ok(r) => println!("model answered after {} attempt(s)", r.attempts),
            Err(m) => println!("model reply unusable: {}", m.reason),
        }
    }
    Ok(())
}
