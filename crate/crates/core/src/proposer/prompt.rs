use super::{PromptRequest, ProposerError};

pub const TIPS: [&str; 4] = [
    "Your rewrited function code must start with '''// start {function name}''' and end with '''// end {function name}'''",
    "Your rewrited function(s) code must be different from original code, not just rewrite code synonymous!",
    "You are not allowed to create your own new function(s) in the rewrited function(s).  You are not allowed to create your own new global variables, but you can use the global variables existing in the <key code>.",
    "Make sure the rewrited function(s) code can be executed correctly.",
];

/// Role, goal, numbered tips, then the whole solver source.
pub fn build_prompt(request: &PromptRequest) -> Result<String, ProposerError> {
    if request.slots.is_empty() {
        return Err(ProposerError::NoSlots);
    }
    let names = request
        .slots
        .iter()
        .map(|s| s.as_str())
        .collect::<Vec<_>>()
        .join(", ");

    let mut out = String::new();
    out.push_str(&format!(
        "You are a SAT solver researcher trying to rewrite the {names} function(s).\n\n"
    ));
    out.push_str(&format!(
        "Your goal is to improve the SAT solver by rewriting the {names} function(s), after reading and understanding the <key code> of SAT solver below.\n\n"
    ));
    out.push_str("Tips:\n");
    let tips = TIPS
        .iter()
        .map(|t| t.to_string())
        .chain(request.extra_tips.iter().cloned());
    for (i, tip) in tips.enumerate() {
        out.push_str(&format!("{}) {}\n", i + 1, tip));
    }
    out.push_str("\n<key code> of SAT solver is:\n");
    out.push_str(&request.solver_source);
    if !request.solver_source.ends_with('\n') {
        out.push('\n');
    }
    Ok(out)
}
