use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Node labels of the metadata ontology. The set is closed: a graph never
/// contains a label outside this enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum NodeLabel {
    Model,
    Dataset,
    Service,
    ProblemType,
    ModelArchitecture,
    ModelTraining,
    ModelInference,
    Parameters,
    Hyperparameters,
    Device,
}

impl NodeLabel {
    pub const ALL: [NodeLabel; 10] = [
        NodeLabel::Model,
        NodeLabel::Dataset,
        NodeLabel::Service,
        NodeLabel::ProblemType,
        NodeLabel::ModelArchitecture,
        NodeLabel::ModelTraining,
        NodeLabel::ModelInference,
        NodeLabel::Parameters,
        NodeLabel::Hyperparameters,
        NodeLabel::Device,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            NodeLabel::Model => "Model",
            NodeLabel::Dataset => "Dataset",
            NodeLabel::Service => "Service",
            NodeLabel::ProblemType => "ProblemType",
            NodeLabel::ModelArchitecture => "ModelArchitecture",
            NodeLabel::ModelTraining => "ModelTraining",
            NodeLabel::ModelInference => "ModelInference",
            NodeLabel::Parameters => "Parameters",
            NodeLabel::Hyperparameters => "Hyperparameters",
            NodeLabel::Device => "Device",
        }
    }

    /// Property names that together identify a node of this label.
    /// Nodes produced by the document mapping always carry all of them.
    pub fn identity_properties(self) -> &'static [&'static str] {
        match self {
            NodeLabel::Model => &["name", "version"],
            NodeLabel::Dataset => &["name", "version"],
            NodeLabel::Service => &["name"],
            NodeLabel::ProblemType => &["name"],
            NodeLabel::ModelArchitecture => &["type"],
            NodeLabel::ModelTraining => &["modelName", "modelVersion"],
            NodeLabel::ModelInference => &["modelName", "modelVersion"],
            NodeLabel::Parameters => &["modelName", "modelVersion"],
            NodeLabel::Hyperparameters => &["signature"],
            NodeLabel::Device => &["cpu", "gpu", "memoryGB"],
        }
    }

    /// Property shown when a node is rendered in a visual export.
    pub fn display_property(self) -> &'static str {
        match self {
            NodeLabel::Model => "name",
            NodeLabel::Dataset => "name",
            NodeLabel::Service => "name",
            NodeLabel::ProblemType => "name",
            NodeLabel::ModelArchitecture => "type",
            NodeLabel::ModelTraining => "modelName",
            NodeLabel::ModelInference => "modelName",
            NodeLabel::Parameters => "modelName",
            NodeLabel::Hyperparameters => "signature",
            NodeLabel::Device => "cpu",
        }
    }
}

impl fmt::Display for NodeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownName(pub String);

impl fmt::Display for UnknownName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown name: {}", self.0)
    }
}

impl std::error::Error for UnknownName {}

impl FromStr for NodeLabel {
    type Err = UnknownName;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        NodeLabel::ALL
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| UnknownName(s.to_string()))
    }
}

/// Relationship types of the ontology, each with a fixed endpoint signature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RelationType {
    #[serde(rename = "TRAINED_ON")]
    TrainedOn,
    #[serde(rename = "PROVIDES")]
    Provides,
    #[serde(rename = "SOLUTION_FOR")]
    SolutionFor,
    #[serde(rename = "UTILIZES")]
    Utilizes,
    #[serde(rename = "TRAINS_ON")]
    TrainsOn,
    #[serde(rename = "INFERENCE_ON")]
    InferenceOn,
    #[serde(rename = "RUNS_ON")]
    RunsOn,
    #[serde(rename = "CONFIGURED_WITH")]
    ConfiguredWith,
    #[serde(rename = "TUNED_WITH")]
    TunedWith,
}

impl RelationType {
    pub const ALL: [RelationType; 9] = [
        RelationType::TrainedOn,
        RelationType::Provides,
        RelationType::SolutionFor,
        RelationType::Utilizes,
        RelationType::TrainsOn,
        RelationType::InferenceOn,
        RelationType::RunsOn,
        RelationType::ConfiguredWith,
        RelationType::TunedWith,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RelationType::TrainedOn => "TRAINED_ON",
            RelationType::Provides => "PROVIDES",
            RelationType::SolutionFor => "SOLUTION_FOR",
            RelationType::Utilizes => "UTILIZES",
            RelationType::TrainsOn => "TRAINS_ON",
            RelationType::InferenceOn => "INFERENCE_ON",
            RelationType::RunsOn => "RUNS_ON",
            RelationType::ConfiguredWith => "CONFIGURED_WITH",
            RelationType::TunedWith => "TUNED_WITH",
        }
    }

    /// Legal (source, target) label pairs. RUNS_ON is the only type with
    /// two admissible source labels.
    pub fn signature(self) -> (&'static [NodeLabel], NodeLabel) {
        match self {
            RelationType::TrainedOn => (&[NodeLabel::Model], NodeLabel::Dataset),
            RelationType::Provides => (&[NodeLabel::Model], NodeLabel::Service),
            RelationType::SolutionFor => (&[NodeLabel::Service], NodeLabel::ProblemType),
            RelationType::Utilizes => (&[NodeLabel::Model], NodeLabel::ModelArchitecture),
            RelationType::TrainsOn => (&[NodeLabel::Model], NodeLabel::ModelTraining),
            RelationType::InferenceOn => (&[NodeLabel::ModelInference], NodeLabel::Model),
            RelationType::RunsOn => (
                &[NodeLabel::ModelTraining, NodeLabel::ModelInference],
                NodeLabel::Device,
            ),
            RelationType::ConfiguredWith => (&[NodeLabel::ModelTraining], NodeLabel::Parameters),
            RelationType::TunedWith => (&[NodeLabel::Parameters], NodeLabel::Hyperparameters),
        }
    }

    pub fn admits(self, source: NodeLabel, target: NodeLabel) -> bool {
        let (sources, t) = self.signature();
        sources.contains(&source) && t == target
    }
}

impl fmt::Display for RelationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RelationType {
    type Err = UnknownName;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RelationType::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| UnknownName(s.to_string()))
    }
}
