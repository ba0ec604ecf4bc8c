//! Domain types shared by every stage of the pipeline.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TypeError {
    #[error("label name must be non-empty")]
    EmptyLabelName,
    #[error("label name {0:?} must not contain path separators")]
    LabelPathSeparator(String),
    #[error("prompt text must be non-empty")]
    EmptyPromptText,
    #[error("prompt text {text:?} must contain the label name {label:?}")]
    LabelNotInPrompt { text: String, label: String },
    #[error("a prompt set must contain at least one prompt")]
    EmptyPromptSet,
    #[error("all prompts in a set must share the label {expected:?}, found {found:?}")]
    MixedLabels { expected: String, found: String },
    #[error("duplicate prompt text in set: {0:?}")]
    DuplicatePromptText(String),
}

/// A class label, optionally with a disambiguating context word
/// (e.g. "boxer" + "pet" to steer generation away from the homophone).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawLabel", into = "RawLabel")]
pub struct Label {
    name: String,
    context: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct RawLabel {
    name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    context: Option<String>,
}

impl TryFrom<RawLabel> for Label {
    type Error = TypeError;

    fn try_from(raw: RawLabel) -> Result<Self, TypeError> {
        Label::new(raw.name, raw.context)
    }
}

impl From<Label> for RawLabel {
    fn from(label: Label) -> Self {
        RawLabel {
            name: label.name,
            context: label.context,
        }
    }
}

impl Label {
    pub fn new(
        name: impl Into<String>,
        context: Option<impl Into<String>>,
    ) -> Result<Self, TypeError> {
        let name = name.into().trim().to_string();
        if name.is_empty() {
            return Err(TypeError::EmptyLabelName);
        }
        // The name becomes a directory under the dataset root.
        if name.contains('/') || name.contains('\\') {
            return Err(TypeError::LabelPathSeparator(name));
        }
        let context = context.map(|c| c.into().trim().to_string()).filter(|c| !c.is_empty());
        Ok(Self { name, context })
    }

    /// Label with no context word.
    pub fn bare(name: impl Into<String>) -> Result<Self, TypeError> {
        Self::new(name, None::<String>)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn context(&self) -> Option<&str> {
        self.context.as_deref()
    }
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.name)
    }
}

/// How a prompt was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PromptSource {
    Naive,
    Llm,
    Caption,
    Diversified,
}

/// One text-to-image prompt bound to the label it is meant to depict.
///
/// For every source except `Llm` the text is guaranteed to contain the label
/// name; LLM suggestions are free-form and exempt.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPrompt", into = "RawPrompt")]
pub struct Prompt {
    text: String,
    label: Label,
    source: PromptSource,
}

#[derive(Serialize, Deserialize)]
struct RawPrompt {
    text: String,
    label: Label,
    source: PromptSource,
}

impl TryFrom<RawPrompt> for Prompt {
    type Error = TypeError;

    fn try_from(raw: RawPrompt) -> Result<Self, TypeError> {
        Prompt::new(raw.text, raw.label, raw.source)
    }
}

impl From<Prompt> for RawPrompt {
    fn from(p: Prompt) -> Self {
        RawPrompt {
            text: p.text,
            label: p.label,
            source: p.source,
        }
    }
}

impl Prompt {
    pub fn new(
        text: impl Into<String>,
        label: Label,
        source: PromptSource,
    ) -> Result<Self, TypeError> {
        let text = text.into();
        if text.trim().is_empty() {
            return Err(TypeError::EmptyPromptText);
        }
        let must_contain_label = !matches!(source, PromptSource::Llm);
        if must_contain_label && !text.contains(label.name()) {
            return Err(TypeError::LabelNotInPrompt {
                text,
                label: label.name().to_string(),
            });
        }
        Ok(Self {
            text,
            label,
            source,
        })
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn label(&self) -> &Label {
        &self.label
    }

    pub fn source(&self) -> PromptSource {
        self.source
    }
}

/// An ordered, duplicate-free list of prompts for one label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPromptSet", into = "RawPromptSet")]
pub struct PromptSet {
    label: Label,
    prompts: Vec<Prompt>,
}

#[derive(Serialize, Deserialize)]
struct RawPromptSet {
    label: Label,
    prompts: Vec<Prompt>,
}

impl TryFrom<RawPromptSet> for PromptSet {
    type Error = TypeError;

    fn try_from(raw: RawPromptSet) -> Result<Self, TypeError> {
        PromptSet::new(raw.label, raw.prompts)
    }
}

impl From<PromptSet> for RawPromptSet {
    fn from(set: PromptSet) -> Self {
        RawPromptSet {
            label: set.label,
            prompts: set.prompts,
        }
    }
}

impl PromptSet {
    pub fn new(label: Label, prompts: Vec<Prompt>) -> Result<Self, TypeError> {
        if prompts.is_empty() {
            return Err(TypeError::EmptyPromptSet);
        }
        let mut seen = std::collections::HashSet::new();
        for p in &prompts {
            if p.label() != &label {
                return Err(TypeError::MixedLabels {
                    expected: label.name().to_string(),
                    found: p.label().name().to_string(),
                });
            }
            if !seen.insert(p.text().to_string()) {
                return Err(TypeError::DuplicatePromptText(p.text().to_string()));
            }
        }
        Ok(Self { label, prompts })
    }

    pub fn label(&self) -> &Label {
        &self.label
    }

    pub fn prompts(&self) -> &[Prompt] {
        &self.prompts
    }

    pub fn len(&self) -> usize {
        self.prompts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prompts.is_empty()
    }

    pub fn texts(&self) -> impl Iterator<Item = &str> {
        self.prompts.iter().map(Prompt::text)
    }
}
