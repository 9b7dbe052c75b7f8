//! JSON frame and relation documents.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use indexmap::IndexMap;
use qdt::{Act, ActSpace, Capacity, DecisionFrame, Event, Level, PossibilityDistribution, PreferenceRelation, Scale};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameDocument {
    /// Number of levels of the scale.
    pub scale: usize,
    pub states: Vec<String>,
    pub outcomes: Vec<String>,
    /// Utility rank of every outcome.
    pub mu: IndexMap<String, u16>,
    pub capacity: CapacitySpec,
    /// Named acts, each listing one outcome label per state.
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub acts: IndexMap<String, Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", try_from = "RawCapacity")]
pub enum CapacitySpec {
    /// One entry per subset of the states.
    Table { table: Vec<TableEntry> },
    Possibility { pi: IndexMap<String, u16> },
    Necessity { pi: IndexMap<String, u16> },
}

#[derive(Deserialize, Clone, Copy)]
#[serde(rename_all = "lowercase")]
enum CapacityKind {
    Table,
    Possibility,
    Necessity,
}

/// Read field by field so that errors inside the table keep their path.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCapacity {
    kind: CapacityKind,
    table: Option<Vec<TableEntry>>,
    pi: Option<IndexMap<String, u16>>,
}

impl TryFrom<RawCapacity> for CapacitySpec {
    type Error = String;

    fn try_from(raw: RawCapacity) -> std::result::Result<Self, String> {
        match (raw.kind, raw.table, raw.pi) {
            (CapacityKind::Table, Some(table), None) => Ok(CapacitySpec::Table { table }),
            (CapacityKind::Possibility, None, Some(pi)) => Ok(CapacitySpec::Possibility { pi }),
            (CapacityKind::Necessity, None, Some(pi)) => Ok(CapacitySpec::Necessity { pi }),
            (CapacityKind::Table, ..) => Err("kind `table` takes exactly the field `table`".into()),
            _ => Err("kinds `possibility` and `necessity` take exactly the field `pi`".into()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableEntry {
    pub event: Vec<String>,
    pub level: u16,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationDocument {
    pub frame: FrameRef,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub induce: Option<Induce>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ranks: Option<Vec<RankEntry>>,
}

/// A path relative to the relation document, or the frame itself.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FrameRef {
    Path(PathBuf),
    Inline(Box<FrameDocument>),
}

/// `"frame"` ranks acts by the frame's own capacity; a capacity spec
/// replaces it first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Induce {
    Named(String),
    Capacity(CapacitySpec),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RankEntry {
    pub act: ActRef,
    pub rank: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ActRef {
    Name(String),
    Outcomes(Vec<String>),
}

/// Reads a JSON document, reporting the failing field path with line and
/// column.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_json(&text).with_context(|| format!("in {}", path.display()))
}

pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if path == "." {
            anyhow!("{inner}")
        } else {
            anyhow!("field `{path}`: {inner}")
        }
    })
}

/// Label tables for rendering acts, outcomes and events.
#[derive(Debug, Clone)]
pub struct Labels {
    pub states: Vec<String>,
    pub outcomes: Vec<String>,
}

impl Labels {
    pub fn act(&self, act: &Act) -> String {
        let names: Vec<&str> = act.outcomes().iter().map(|&x| self.outcomes[x].as_str()).collect();
        format!("({})", names.join(","))
    }

    pub fn outcome(&self, x: usize) -> String {
        self.outcomes[x].clone()
    }

    pub fn event(&self, event: Event) -> String {
        let names: Vec<&str> = event.states().map(|s| self.states[s].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }

    fn state_index(&self, label: &str) -> Result<usize> {
        self.states
            .iter()
            .position(|s| s == label)
            .ok_or_else(|| anyhow!("unknown state `{label}`"))
    }

    fn outcome_index(&self, label: &str) -> Result<usize> {
        self.outcomes
            .iter()
            .position(|s| s == label)
            .ok_or_else(|| anyhow!("unknown outcome `{label}`"))
    }

    pub fn parse_event(&self, labels: &[String]) -> Result<Event> {
        let states = labels
            .iter()
            .map(|l| self.state_index(l))
            .collect::<Result<Vec<_>>>()?;
        Ok(Event::from_states(states))
    }

    pub fn parse_act(&self, labels: &[String]) -> Result<Act> {
        if labels.len() != self.states.len() {
            bail!(
                "act lists {} outcomes for {} states",
                labels.len(),
                self.states.len()
            );
        }
        Ok(Act::new(
            labels
                .iter()
                .map(|l| self.outcome_index(l))
                .collect::<Result<_>>()?,
        ))
    }
}

fn check_unique(kind: &str, labels: &[String]) -> Result<()> {
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            bail!("duplicate {kind} label `{l}`");
        }
    }
    Ok(())
}

/// A frame document resolved against the library types.
#[derive(Debug, Clone)]
pub struct Frame {
    pub frame: DecisionFrame,
    pub labels: Labels,
    pub acts: IndexMap<String, Act>,
}

impl FrameDocument {
    pub fn labels(&self) -> Result<Labels> {
        check_unique("state", &self.states)?;
        check_unique("outcome", &self.outcomes)?;
        Ok(Labels {
            states: self.states.clone(),
            outcomes: self.outcomes.clone(),
        })
    }

    pub fn scale(&self) -> Result<Scale> {
        Scale::new(self.scale).context("field `scale`")
    }

    pub fn mu(&self, labels: &Labels) -> Result<Vec<Level>> {
        for key in self.mu.keys() {
            labels.outcome_index(key).context("field `mu`")?;
        }
        labels
            .outcomes
            .iter()
            .map(|x| {
                self.mu
                    .get(x)
                    .map(|&l| Level(l))
                    .ok_or_else(|| anyhow!("field `mu`: no utility for outcome `{x}`"))
            })
            .collect()
    }

    /// The capacity table as written, before validation.
    pub fn raw_table(&self, labels: &Labels) -> Result<Vec<Level>> {
        let n = labels.states.len();
        let CapacitySpec::Table { table } = &self.capacity else {
            bail!("field `capacity`: expected a table");
        };
        let mut out: Vec<Option<Level>> = vec![None; 1 << n];
        for (i, entry) in table.iter().enumerate() {
            let event = labels
                .parse_event(&entry.event)
                .with_context(|| format!("field `capacity.table[{i}].event`"))?;
            if out[event.index()].replace(Level(entry.level)).is_some() {
                bail!("field `capacity.table[{i}]`: event {} listed twice", labels.event(event));
            }
        }
        out.into_iter()
            .enumerate()
            .map(|(i, l)| {
                l.ok_or_else(|| {
                    anyhow!(
                        "field `capacity.table`: no entry for event {}",
                        labels.event(Event(i as u32))
                    )
                })
            })
            .collect()
    }

    fn distribution(&self, labels: &Labels, pi: &IndexMap<String, u16>, scale: Scale) -> Result<PossibilityDistribution> {
        for key in pi.keys() {
            labels.state_index(key).context("field `capacity.pi`")?;
        }
        let values = labels
            .states
            .iter()
            .map(|s| {
                pi.get(s)
                    .map(|&l| Level(l))
                    .ok_or_else(|| anyhow!("field `capacity.pi`: no value for state `{s}`"))
            })
            .collect::<Result<Vec<_>>>()?;
        PossibilityDistribution::new(scale, values).context("field `capacity.pi`")
    }

    /// Builds a frame with `spec` as its capacity.
    pub fn frame_with(&self, spec: &CapacitySpec) -> Result<DecisionFrame> {
        let labels = self.labels()?;
        let scale = self.scale()?;
        let mu = self.mu(&labels)?;
        let frame = match spec {
            CapacitySpec::Table { .. } => {
                let doc = FrameDocument {
                    capacity: spec.clone(),
                    ..self.clone()
                };
                let capacity = Capacity::new(doc.raw_table(&labels)?, labels.states.len(), scale)
                    .context("field `capacity`")?;
                DecisionFrame::new(mu, capacity)
            }
            CapacitySpec::Possibility { pi } => {
                DecisionFrame::optimistic(mu, self.distribution(&labels, pi, scale)?)
            }
            CapacitySpec::Necessity { pi } => {
                DecisionFrame::pessimistic(mu, self.distribution(&labels, pi, scale)?)
            }
        };
        frame.context("field `mu`")
    }

    pub fn resolve(&self) -> Result<Frame> {
        let labels = self.labels()?;
        let frame = self.frame_with(&self.capacity)?;
        let acts = self
            .acts
            .iter()
            .map(|(name, outs)| {
                let act = labels
                    .parse_act(outs)
                    .with_context(|| format!("field `acts.{name}`"))?;
                Ok((name.clone(), act))
            })
            .collect::<Result<_>>()?;
        Ok(Frame { frame, labels, acts })
    }
}

impl Frame {
    pub fn load(path: &Path) -> Result<Self> {
        let doc: FrameDocument = read_json(path)?;
        doc.resolve().with_context(|| format!("in {}", path.display()))
    }

    /// An act given by name or as comma-separated outcome labels.
    pub fn parse_act(&self, text: &str) -> Result<Act> {
        if let Some(act) = self.acts.get(text) {
            return Ok(act.clone());
        }
        let parts: Vec<String> = text.split(',').map(|s| s.trim().to_string()).collect();
        self.labels
            .parse_act(&parts)
            .with_context(|| format!("act `{text}` is neither a declared name nor an outcome list"))
    }

    fn act_ref(&self, r: &ActRef) -> Result<Act> {
        match r {
            ActRef::Name(name) => self
                .acts
                .get(name)
                .cloned()
                .ok_or_else(|| anyhow!("undeclared act `{name}`")),
            ActRef::Outcomes(labels) => self.labels.parse_act(labels),
        }
    }
}

/// A relation document resolved against its frame.
pub struct Relation {
    pub frame: Frame,
    pub relation: PreferenceRelation,
}

impl Relation {
    pub fn load(path: &Path, budget: qdt::Budget) -> Result<Self> {
        let doc: RelationDocument = read_json(path)?;
        let base = path.parent().unwrap_or(Path::new("."));
        doc.resolve(base, budget)
            .with_context(|| format!("in {}", path.display()))
    }
}

impl RelationDocument {
    pub fn resolve(&self, base: &Path, budget: qdt::Budget) -> Result<Relation> {
        let frame_doc = match &self.frame {
            FrameRef::Path(p) => read_json::<FrameDocument>(&base.join(p))?,
            FrameRef::Inline(doc) => (**doc).clone(),
        };
        let mut frame = frame_doc.resolve().context("field `frame`")?;
        let relation = match (&self.induce, &self.ranks) {
            (Some(_), Some(_)) => bail!("give either `induce` or `ranks`, not both"),
            (None, None) => bail!("missing `induce` or `ranks`"),
            (Some(induce), None) => {
                if let Induce::Capacity(spec) = induce {
                    frame.frame = frame_doc.frame_with(spec).context("field `induce`")?;
                } else if induce != &Induce::Named("frame".into()) {
                    bail!("field `induce`: expected \"frame\" or a capacity");
                }
                qdt::synthesis::induce_preorder_within(&frame.frame, budget)?
            }
            (None, Some(entries)) => {
                let space: ActSpace = frame.frame.space();
                let pairs = entries
                    .iter()
                    .enumerate()
                    .map(|(i, e)| {
                        let act = frame
                            .act_ref(&e.act)
                            .with_context(|| format!("field `ranks[{i}].act`"))?;
                        Ok((act, e.rank))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let rel = PreferenceRelation::from_entries(space, pairs).context("field `ranks`")?;
                for (name, act) in &frame.acts {
                    if rel.rank(act)?.is_none() {
                        bail!("field `ranks`: declared act `{name}` is not ranked");
                    }
                }
                rel.with_frame(frame.frame.clone())?
            }
        };
        Ok(Relation { frame, relation })
    }
}
