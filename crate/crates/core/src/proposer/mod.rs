//! Sources of replacement slot bodies: an OpenAI-compatible chat endpoint or
//! a seeded walk over the catalog.

mod llm;
mod mock;
mod prompt;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use llm::{
    propose_llm, AuditLog, ChatMessage, ChatTransport, HttpTransport, LlmSettings, TransportError,
};
pub use mock::MockProposer;
pub use prompt::{build_prompt, TIPS};

use crate::materializer::{extract_region_from_text, TemplateError};
use crate::slots::{HeuristicConfiguration, SlotName};

#[derive(Debug, Error)]
pub enum ProposerError {
    #[error("a proposal request needs at least one slot")]
    NoSlots,
    #[error("catalog has no variants for slot {0}")]
    EmptyCatalog(SlotName),
    #[error("environment variable {0} holding the API key is not set")]
    MissingApiKey(String),
    #[error("transport failed after {attempts} attempt(s): {last}")]
    Transport { attempts: u32, last: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PromptRequest {
    /// Sorted and deduplicated.
    pub slots: Vec<SlotName>,
    pub solver_source: String,
    pub extra_tips: Vec<String>,
}

impl PromptRequest {
    pub fn new(
        slots: impl IntoIterator<Item = SlotName>,
        solver_source: impl Into<String>,
    ) -> Result<Self, ProposerError> {
        let mut slots: Vec<SlotName> = slots.into_iter().collect();
        slots.sort();
        slots.dedup();
        if slots.is_empty() {
            return Err(ProposerError::NoSlots);
        }
        Ok(PromptRequest {
            slots,
            solver_source: solver_source.into(),
            extra_tips: Vec::new(),
        })
    }

    pub fn with_tips(mut self, tips: Vec<String>) -> Self {
        self.extra_tips = tips;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProposerResponse {
    pub bodies: BTreeMap<SlotName, String>,
    pub raw: String,
    pub attempts: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MalformedReason {
    MissingMarker { slot: SlotName, marker: String },
    DuplicateMarker { slot: SlotName, marker: String },
    Misordered { slot: SlotName },
    EmptyBody { slot: SlotName },
    /// The body equals the current one up to whitespace.
    Identical { slot: SlotName },
}

impl fmt::Display for MalformedReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MalformedReason::MissingMarker { marker, .. } => {
                write!(f, "the line `{marker}` is missing")
            }
            MalformedReason::DuplicateMarker { marker, .. } => {
                write!(f, "the line `{marker}` appears more than once")
            }
            MalformedReason::Misordered { slot } => {
                write!(f, "`// end {slot}` comes before `// start {slot}`")
            }
            MalformedReason::EmptyBody { slot } => write!(f, "the {slot} function is empty"),
            MalformedReason::Identical { slot } => {
                write!(f, "the {slot} function is identical to the original code")
            }
        }
    }
}

impl MalformedReason {
    pub fn slot(&self) -> SlotName {
        match self {
            MalformedReason::MissingMarker { slot, .. }
            | MalformedReason::DuplicateMarker { slot, .. }
            | MalformedReason::Misordered { slot }
            | MalformedReason::EmptyBody { slot }
            | MalformedReason::Identical { slot } => *slot,
        }
    }

    pub fn is_identical(&self) -> bool {
        matches!(self, MalformedReason::Identical { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MalformedResponse {
    pub reason: MalformedReason,
    pub raw: String,
    pub attempts: u32,
}

fn normalized(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Pulls each requested slot's body out of free-form response text. When
/// `current` is given, a body equal to the current one (ignoring
/// whitespace) makes the response malformed.
pub fn parse_response(
    raw: &str,
    slots: &[SlotName],
    current: Option<&HeuristicConfiguration>,
) -> Result<ProposerResponse, MalformedResponse> {
    let malformed = |reason| MalformedResponse {
        reason,
        raw: raw.to_string(),
        attempts: 1,
    };
    let mut bodies = BTreeMap::new();
    for &slot in slots {
        let body = extract_region_from_text(raw, slot).map_err(|e| {
            malformed(match e {
                TemplateError::MissingMarker { slot, marker } => {
                    MalformedReason::MissingMarker { slot, marker }
                }
                TemplateError::DuplicateMarker { slot, marker } => {
                    MalformedReason::DuplicateMarker { slot, marker }
                }
                _ => MalformedReason::Misordered { slot },
            })
        })?;
        if body.trim().is_empty() {
            return Err(malformed(MalformedReason::EmptyBody { slot }));
        }
        if let Some(cur) = current.and_then(|c| c.bodies.get(&slot)) {
            if normalized(cur) == normalized(body) {
                return Err(malformed(MalformedReason::Identical { slot }));
            }
        }
        bodies.insert(slot, body.to_string());
    }
    Ok(ProposerResponse {
        bodies,
        raw: raw.to_string(),
        attempts: 1,
    })
}

/// Wraps bodies in their marker lines, the shape a well-behaved answer has.
pub fn wrap_bodies(bodies: &BTreeMap<SlotName, String>) -> String {
    let mut out = String::new();
    for (slot, body) in bodies {
        out.push_str(&slot.start_marker());
        out.push('\n');
        out.push_str(body);
        if !body.ends_with('\n') {
            out.push('\n');
        }
        out.push_str(&slot.end_marker());
        out.push('\n');
    }
    out
}

/// What one proposal step produced.
#[derive(Clone, Debug)]
pub enum Proposal {
    Bodies(ProposerResponse),
    Malformed(MalformedResponse),
    Failed(String),
}

/// The proposer a campaign uses.
pub enum Proposer {
    Mock(MockProposer),
    Llm {
        settings: LlmSettings,
        transport: Box<dyn ChatTransport + Send>,
        audit: Option<AuditLog>,
    },
}

impl Proposer {
    pub fn propose(
        &mut self,
        request: &PromptRequest,
        current: &HeuristicConfiguration,
    ) -> Proposal {
        match self {
            Proposer::Mock(m) => match m.propose(request) {
                Ok(r) => Proposal::Bodies(r),
                Err(e) => Proposal::Failed(e.to_string()),
            },
            Proposer::Llm {
                settings,
                transport,
                audit,
            } => match propose_llm(request, current, settings, transport.as_mut(), audit.as_mut())
            {
                Ok(Ok(r)) => Proposal::Bodies(r),
                Ok(Err(m)) => Proposal::Malformed(m),
                Err(e) => Proposal::Failed(e.to_string()),
            },
        }
    }

    /// Advances internal state as if `request` had been answered, without
    /// producing anything. Used when resuming a campaign.
    pub fn skip(&mut self, request: &PromptRequest) {
        if let Proposer::Mock(m) = self {
            let _ = m.propose(request);
        }
    }
}
