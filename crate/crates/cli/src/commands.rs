//! The five commands. Each returns the JSON text to emit.

use bellgems_core::basis::build_basis;
use bellgems_core::classify::{classify, InteractionPattern};
use bellgems_core::decomposition::{
    block_params_from_matrix, extract_blocks, extract_blocks_with_pairing, scaled_tolerance,
    BlockDecomposition, BlockParams,
};
use bellgems_core::evolution::{
    dense_gem_propagator, evolve_interval, evolve_with_pairing, verify_group_structure,
    verify_unitary, PropagatorResult,
};
use bellgems_core::hamiltonian::{gem_matrix, gem_matrix_oracle, HamiltonianSpec};
use bellgems_core::{hermiticity_deviation, max_abs, max_abs_diff, ComplexMatrix};
use serde::Serialize;

use crate::config::{Command, Emit, PairingChoice, RunConfig};
use crate::dump::MatrixDump;
use crate::error::{CliError, InputError};
use crate::spec_file::{load_spec, parse_pairing, read_text};

/// Runs `config` and returns the document to write.
pub fn run(config: &RunConfig) -> Result<String, CliError> {
    let value = match &config.command {
        Command::Basis { d } => basis(*d, config.emit.unwrap_or(Emit::Matrix))?,
        Command::Classify => to_json(&classify_report(&spec(config)?)?),
        Command::Transform { t, check_oracle } => {
            let default = if *check_oracle {
                Emit::Both
            } else {
                Emit::Matrix
            };
            transform(
                &spec(config)?,
                *t,
                *check_oracle,
                config.emit.unwrap_or(default),
            )?
        }
        Command::Blocks { t } => {
            let pairs = pairing(config)?;
            blocks(
                &spec(config)?,
                *t,
                config.tol,
                pairs.as_deref(),
                config.emit.unwrap_or(Emit::Report),
            )?
        }
        Command::Evolve {
            t_final,
            check_oracle,
        } => {
            let pairs = pairing(config)?;
            evolve(
                &spec(config)?,
                *t_final,
                config.tol,
                pairs.as_deref(),
                *check_oracle,
                config.emit.unwrap_or(Emit::Report),
            )?
        }
    };
    Ok(value)
}

fn spec(config: &RunConfig) -> Result<HamiltonianSpec, CliError> {
    let path = config
        .input_path
        .as_deref()
        .ok_or_else(|| InputError::Field {
            field: "--input".into(),
            message: "required for this command".into(),
        })?;
    Ok(load_spec(path)?)
}

fn pairing(config: &RunConfig) -> Result<Option<Vec<(usize, usize)>>, CliError> {
    match &config.pairing {
        PairingChoice::Ascending => Ok(None),
        PairingChoice::Custom(path) => Ok(Some(parse_pairing(&read_text(path)?)?)),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("reports hold finite numbers")
}

#[derive(Serialize)]
struct Both<'a, R: Serialize> {
    matrix: &'a MatrixDump,
    report: &'a R,
}

fn emit<R: Serialize>(emit: Emit, matrix: &ComplexMatrix, report: &R) -> String {
    let dump = MatrixDump::from(matrix);
    match emit {
        Emit::Matrix => to_json(&dump),
        Emit::Report => to_json(report),
        Emit::Both => to_json(&Both {
            matrix: &dump,
            report,
        }),
    }
}

#[derive(Serialize)]
struct BasisReport {
    d: usize,
    dim: usize,
    orthonormality_deviation: f64,
    max_imaginary: f64,
}

pub fn basis(d: usize, mode: Emit) -> Result<String, CliError> {
    let b = build_basis(d)?;
    let gram = b.matrix().adjoint() * b.matrix();
    let report = BasisReport {
        d,
        dim: b.dim(),
        orthonormality_deviation: max_abs_diff(&gram, &ComplexMatrix::identity(b.dim(), b.dim())),
        max_imaginary: b.matrix().iter().fold(0.0, |m, z| m.max(z.im.abs())),
    };
    Ok(emit(mode, b.matrix(), &report))
}

#[derive(Debug, PartialEq, Serialize)]
pub struct ClassifyReport {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair: Option<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axis: Option<u8>,
}

pub fn classify_report(spec: &HamiltonianSpec) -> Result<ClassifyReport, CliError> {
    let pattern = classify(spec)?;
    let (pair, axis) = match pattern {
        InteractionPattern::TypeI { pair, axis } | InteractionPattern::TypeII { pair, axis } => {
            (Some([pair.0, pair.1]), Some(axis.value()))
        }
        _ => (None, None),
    };
    Ok(ClassifyReport {
        kind: pattern.kind(),
        pair,
        axis,
    })
}

#[derive(Serialize)]
struct TransformReport {
    d: usize,
    t: f64,
    dim: usize,
    hermiticity_deviation: f64,
    trace: [f64; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_deviation: Option<f64>,
}

pub fn transform(
    spec: &HamiltonianSpec,
    t: f64,
    check_oracle: bool,
    mode: Emit,
) -> Result<String, CliError> {
    let d = spec.d()?;
    let m = gem_matrix(spec, t)?;
    let oracle_deviation = if check_oracle {
        Some(max_abs_diff(&m, &gem_matrix_oracle(spec, t)?))
    } else {
        None
    };
    let trace = m.trace();
    let report = TransformReport {
        d,
        t,
        dim: m.nrows(),
        hermiticity_deviation: hermiticity_deviation(&m),
        trace: [trace.re, trace.im],
        oracle_deviation,
    };
    Ok(emit(mode, &m, &report))
}

#[derive(Serialize)]
struct ParamsOut {
    delta_plus: f64,
    delta_minus: f64,
    r_a: f64,
    r_b: f64,
    gamma: f64,
}

impl From<BlockParams> for ParamsOut {
    fn from(p: BlockParams) -> Self {
        ParamsOut {
            delta_plus: p.delta_plus,
            delta_minus: p.delta_minus,
            r_a: p.r_a,
            r_b: p.r_b,
            gamma: p.gamma,
        }
    }
}

#[derive(Serialize)]
struct BlockOut {
    pair: [usize; 2],
    coupled: bool,
    block: MatrixDump,
    params: ParamsOut,
}

#[derive(Serialize)]
struct BlocksReport {
    d: usize,
    t: f64,
    tol: f64,
    residual: f64,
    pairing: Vec<[usize; 2]>,
    blocks: Vec<BlockOut>,
}

fn decompose(
    m: &ComplexMatrix,
    tol: f64,
    pairs: Option<&[(usize, usize)]>,
) -> Result<BlockDecomposition, CliError> {
    Ok(match pairs {
        Some(pairs) => extract_blocks_with_pairing(m, pairs, tol)?,
        None => extract_blocks(m, tol)?,
    })
}

pub fn blocks(
    spec: &HamiltonianSpec,
    t: f64,
    relative_tol: f64,
    pairs: Option<&[(usize, usize)]>,
    mode: Emit,
) -> Result<String, CliError> {
    let d = spec.d()?;
    let m = gem_matrix(spec, t)?;
    let tol = scaled_tolerance(&m, relative_tol);
    let dec = decompose(&m, tol, pairs)?;
    let report = BlocksReport {
        d,
        t,
        tol,
        residual: dec.residual,
        pairing: dec.pairs.iter().map(|&(j, k)| [j, k]).collect(),
        blocks: dec
            .pairs
            .iter()
            .zip(&dec.coupled)
            .zip(&dec.blocks)
            .map(|((&(j, k), &coupled), block)| BlockOut {
                pair: [j, k],
                coupled,
                block: MatrixDump::from(block),
                params: block_params_from_matrix(block).into(),
            })
            .collect(),
    };
    Ok(emit(mode, &m, &report))
}

#[derive(Serialize)]
struct PropagatorBlockOut {
    pair: [usize; 2],
    unitary: MatrixDump,
    phase: f64,
    determinant: [f64; 2],
}

#[derive(Serialize)]
struct EvolveReport {
    d: usize,
    #[serde(rename = "T")]
    t_final: f64,
    pairing: Vec<[usize; 2]>,
    blocks: Vec<PropagatorBlockOut>,
    assembled: MatrixDump,
    unitarity_deviation: f64,
    determinant_product_deviation: f64,
    determinant_phase_deviation: f64,
    group_structure_pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_deviation: Option<f64>,
}

/// Tolerance used for the group-structure pass flag.
pub const GROUP_STRUCTURE_TOL: f64 = 1e-9;

pub fn evolve(
    spec: &HamiltonianSpec,
    t_final: f64,
    relative_tol: f64,
    pairs: Option<&[(usize, usize)]>,
    check_oracle: bool,
    mode: Emit,
) -> Result<String, CliError> {
    let d = spec.d()?;
    let result: PropagatorResult = match pairs {
        Some(pairs) => evolve_with_pairing(spec, 0.0, t_final, pairs, relative_tol)?,
        None => evolve_interval(spec, 0.0, t_final, relative_tol)?,
    };
    let group = verify_group_structure(&result, GROUP_STRUCTURE_TOL);
    let oracle_deviation = if check_oracle {
        Some(max_abs_diff(
            &result.assembled,
            &dense_gem_propagator(spec, 0.0, t_final)?,
        ))
    } else {
        None
    };
    let report = EvolveReport {
        d,
        t_final,
        pairing: result.pairing.iter().map(|&(j, k)| [j, k]).collect(),
        blocks: result
            .pairing
            .iter()
            .zip(&result.block_unitaries)
            .zip(&result.global_phases)
            .zip(&group.determinants)
            .map(|(((&(j, k), u), &phase), det)| PropagatorBlockOut {
                pair: [j, k],
                unitary: MatrixDump::from(u),
                phase,
                determinant: [det.re, det.im],
            })
            .collect(),
        assembled: MatrixDump::from(&result.assembled),
        unitarity_deviation: verify_unitary(&result.assembled, GROUP_STRUCTURE_TOL).max_deviation,
        determinant_product_deviation: group.product_deviation,
        determinant_phase_deviation: group
            .phase_deviation
            .iter()
            .fold(0.0, |m: f64, &v| m.max(v)),
        group_structure_pass: group.pass(),
        oracle_deviation,
    };
    debug_assert!(max_abs(&result.assembled).is_finite());
    Ok(emit(mode, &result.assembled, &report))
}
