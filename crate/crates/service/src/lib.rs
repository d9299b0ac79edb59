//! HTTP/JSON API over barvec, versioned under `/v1`.
//!
//! Routes:
//! - `GET  /v1/methods`: method catalogue.
//! - `POST /v1/barcode`: barcodes of a point cloud, image, or barcode CSV.
//! - `POST /v1/vectorize`: one feature vector plus a render hint.
//! - `POST /v1/fit`: fit a pipeline on training data and store it.
//! - `POST /v1/models`, `GET /v1/models/{id}`: model import and export.
//!
//! Models are stored in memory under the SHA-256 of their JSON.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use axum::body::Bytes;
use axum::extract::{DefaultBodyLimit, Path, Query, State};
use axum::http::{header, HeaderMap, HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use barvec::barcode::parse_barcodes;
use barvec::catalogue::{catalogue, MethodInfo};
use barvec::pipeline::RenderHint;
use barvec::persistence::{
    cubical_complex, encode_pgm, parse_image_csv, parse_pgm, parse_point_cloud, rips_complex,
    CubicalBudget, Direction, RipsBudget,
};
use barvec::vectorize::image_rows_top_down;
use barvec::{
    compute_persistence, Barcode, BarcodeSet64, EssentialPolicy, FeatureVector64, FittedPipeline,
    FittedPipeline64, GrayscaleImage, Interval, MethodId, PointCloud, VectorizerSpec,
};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use tower_http::cors::{AllowOrigin, CorsLayer};

pub const API_VERSION: &str = "v1";
/// Default request body cap in bytes.
pub const DEFAULT_BODY_LIMIT: usize = 10 * 1024 * 1024;

#[derive(Debug, Clone)]
pub struct Config {
    pub body_limit: usize,
    pub rips: RipsBudget,
    pub cubical: CubicalBudget,
    /// Allowed CORS origin; any origin when `None`.
    pub cors_origin: Option<String>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            body_limit: DEFAULT_BODY_LIMIT,
            rips: RipsBudget::default(),
            cubical: CubicalBudget::default(),
            cors_origin: None,
        }
    }
}

/// Fitted pipelines keyed by content hash.
#[derive(Debug, Default)]
pub struct ModelStore {
    models: RwLock<HashMap<String, Arc<FittedPipeline64>>>,
}

impl ModelStore {
    pub fn insert(&self, model: FittedPipeline64) -> String {
        let bytes = serde_json::to_vec(&model).expect("models serialize");
        let id: String = Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect();
        self.models
            .write()
            .expect("model store lock")
            .insert(id.clone(), Arc::new(model));
        id
    }

    pub fn get(&self, id: &str) -> Option<Arc<FittedPipeline64>> {
        self.models.read().expect("model store lock").get(id).cloned()
    }
}

struct AppState {
    config: Config,
    models: ModelStore,
}

type Shared = Arc<AppState>;

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    message: String,
}

impl ApiError {
    fn new(status: StatusCode, message: impl Into<String>) -> Self {
        ApiError {
            status,
            message: message.into(),
        }
    }

    fn bad(message: impl Into<String>) -> Self {
        Self::new(StatusCode::BAD_REQUEST, message)
    }
}

impl From<barvec::Error> for ApiError {
    fn from(e: barvec::Error) -> Self {
        let status = match e {
            barvec::Error::Budget(_) => StatusCode::PAYLOAD_TOO_LARGE,
            barvec::Error::ModelRequired(_) => StatusCode::CONFLICT,
            barvec::Error::Io(_) => StatusCode::INTERNAL_SERVER_ERROR,
            _ => StatusCode::BAD_REQUEST,
        };
        ApiError::new(status, e.to_string())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(serde_json::json!({ "error": self.message }))).into_response()
    }
}

type ApiResult<T> = Result<T, ApiError>;

fn parse_json<T: for<'de> Deserialize<'de>>(body: &[u8]) -> ApiResult<T> {
    serde_json::from_slice(body).map_err(|e| ApiError::bad(format!("malformed request: {e}")))
}

/// Raw data or barcodes to work on.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Payload {
    /// Barcode CSV text (`dim,birth,death`).
    BarcodeCsv { csv: String },
    /// `[dim, birth, death]` triples; a `null` death is essential.
    Bars { bars: Vec<(usize, f64, Option<f64>)> },
    /// Rips filtration; `max_scale` defaults to the diameter.
    PointCloud {
        points: Vec<Vec<f64>>,
        #[serde(default)]
        max_scale: Option<f64>,
        #[serde(default = "default_max_dim")]
        max_dim: usize,
    },
    /// Row-major intensities, top row first.
    Image {
        width: usize,
        height: usize,
        pixels: Vec<f64>,
        #[serde(default)]
        direction: Direction,
    },
}

fn default_max_dim() -> usize {
    2
}

fn default_dims() -> Vec<usize> {
    vec![0, 1]
}

fn check_budget(n: usize, cap: usize, what: &str) -> ApiResult<()> {
    if n > cap {
        return Err(ApiError::new(
            StatusCode::PAYLOAD_TOO_LARGE,
            format!("{n} {what} exceeds the limit of {cap}"),
        ));
    }
    Ok(())
}

fn cloud_barcodes(pc: &PointCloud<f64>, max_scale: Option<f64>, max_dim: usize, cfg: &Config) -> ApiResult<BarcodeSet64> {
    check_budget(pc.len(), cfg.rips.max_points, "points")?;
    let scale = match max_scale {
        Some(s) => s,
        None => pc
            .distance_matrix()
            .iter()
            .flatten()
            .copied()
            .fold(0.0, f64::max),
    };
    let fc = rips_complex(pc, scale, max_dim, &cfg.rips)?;
    Ok(compute_persistence(&fc)?)
}

fn image_barcodes(img: &GrayscaleImage<f64>, direction: Direction, cfg: &Config) -> ApiResult<BarcodeSet64> {
    let fc = cubical_complex(img, direction, &cfg.cubical)?;
    Ok(compute_persistence(&fc)?)
}

fn payload_barcodes(p: &Payload, cfg: &Config) -> ApiResult<BarcodeSet64> {
    match p {
        Payload::BarcodeCsv { csv } => Ok(parse_barcodes(csv)?),
        Payload::Bars { bars } => {
            let mut per_dim: std::collections::BTreeMap<usize, Vec<Interval<f64>>> = Default::default();
            for &(dim, birth, death) in bars {
                let iv = match death {
                    Some(d) => Interval::new(birth, d)?,
                    None => Interval::essential(birth)?,
                };
                per_dim.entry(dim).or_default().push(iv);
            }
            Ok(per_dim
                .into_iter()
                .map(|(d, ivs)| (d, Barcode::from_intervals(d, ivs)))
                .collect())
        }
        Payload::PointCloud {
            points,
            max_scale,
            max_dim,
        } => {
            check_budget(points.len(), cfg.rips.max_points, "points")?;
            cloud_barcodes(&PointCloud::new(points.clone())?, *max_scale, *max_dim, cfg)
        }
        Payload::Image {
            width,
            height,
            pixels,
            direction,
        } => {
            check_budget(*width, cfg.cubical.max_width, "pixel columns")?;
            check_budget(*height, cfg.cubical.max_height, "pixel rows")?;
            let img = GrayscaleImage::new(*width, *height, pixels.clone())?;
            image_barcodes(&img, *direction, cfg)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BarOut {
    pub birth: f64,
    /// `None` for an essential class.
    pub death: Option<f64>,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BarcodeOut {
    pub dim: usize,
    pub bars: Vec<BarOut>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BarcodeResponse {
    pub barcodes: Vec<BarcodeOut>,
}

/// Requested dimensions with zero-length bars removed; essential bars kept.
fn barcode_response(set: &BarcodeSet64, dims: &[usize]) -> BarcodeResponse {
    let barcodes = dims
        .iter()
        .map(|&dim| {
            let bars = set
                .get(&dim)
                .map(|b| {
                    b.entries()
                        .iter()
                        .filter(|(iv, _)| iv.birth() < iv.death())
                        .map(|(iv, m)| BarOut {
                            birth: iv.birth(),
                            death: (!iv.is_essential()).then(|| iv.death()),
                            multiplicity: *m,
                        })
                        .collect()
                })
                .unwrap_or_default();
            BarcodeOut { dim, bars }
        })
        .collect();
    BarcodeResponse { barcodes }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BarcodeRequest {
    input: Payload,
    #[serde(default = "default_dims")]
    dims: Vec<usize>,
}

#[derive(Debug, Deserialize)]
struct RawQuery {
    /// `points`, `image` or `barcode` for CSV bodies.
    #[serde(default)]
    kind: Option<String>,
    #[serde(default)]
    dims: Option<String>,
    #[serde(default)]
    direction: Option<Direction>,
    #[serde(default)]
    max_scale: Option<f64>,
}

fn content_type(headers: &HeaderMap) -> String {
    headers
        .get(header::CONTENT_TYPE)
        .and_then(|v| v.to_str().ok())
        .map(|v| v.split(';').next().unwrap_or("").trim().to_ascii_lowercase())
        .unwrap_or_default()
}

fn parse_dims(s: &str) -> ApiResult<Vec<usize>> {
    s.split(',')
        .map(|d| d.trim().parse().map_err(|_| ApiError::bad(format!("bad dimension `{d}`"))))
        .collect()
}

async fn compute<T: Send + 'static>(f: impl FnOnce() -> ApiResult<T> + Send + 'static) -> ApiResult<T> {
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))?
}

async fn methods() -> Json<serde_json::Value> {
    let methods: Vec<MethodInfo> = catalogue();
    Json(serde_json::json!({ "version": API_VERSION, "methods": methods }))
}

async fn barcode(
    State(state): State<Shared>,
    Query(q): Query<RawQuery>,
    headers: HeaderMap,
    body: Bytes,
) -> ApiResult<Json<BarcodeResponse>> {
    let ct = content_type(&headers);
    compute(move || {
        let cfg = &state.config;
        let dims = match &q.dims {
            Some(d) => parse_dims(d)?,
            None => default_dims(),
        };
        let direction = q.direction.unwrap_or_default();
        let (set, dims) = match ct.as_str() {
            "text/csv" => {
                let text = std::str::from_utf8(&body).map_err(|_| ApiError::bad("body is not UTF-8"))?;
                let set = match q.kind.as_deref().unwrap_or("barcode") {
                    "barcode" => parse_barcodes(text)?,
                    "points" => {
                        let pc = parse_point_cloud(text)?;
                        cloud_barcodes(&pc, q.max_scale, default_max_dim(), cfg)?
                    }
                    "image" => image_barcodes(&parse_image_csv(text)?, direction, cfg)?,
                    other => return Err(ApiError::bad(format!("unknown kind `{other}`"))),
                };
                (set, dims)
            }
            "image/x-portable-graymap" => (image_barcodes(&parse_pgm(&body)?, direction, cfg)?, dims),
            _ => {
                let req: BarcodeRequest = parse_json(&body)?;
                (payload_barcodes(&req.input, cfg)?, req.dims)
            }
        };
        Ok(Json(barcode_response(&set, &dims)))
    })
    .await
}

type Params = serde_json::Map<String, serde_json::Value>;

/// Method id plus a parameter record, validated against the method.
fn spec_of(method: MethodId, params: &Params) -> ApiResult<VectorizerSpec> {
    let mut obj = params.clone();
    if obj.contains_key("method") {
        return Err(ApiError::bad("`method` belongs outside `params`"));
    }
    obj.insert("method".into(), method.as_str().into());
    let spec: VectorizerSpec = serde_json::from_value(obj.into())
        .map_err(|e| ApiError::bad(format!("invalid parameters: {e}")))?;
    spec.validate()?;
    Ok(spec)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct VectorizeRequest {
    method: MethodId,
    #[serde(default)]
    params: Params,
    input: Payload,
    #[serde(default = "default_dims")]
    dims: Vec<usize>,
    #[serde(default)]
    policy: EssentialPolicy<f64>,
    /// Stored model to apply; its method must match.
    #[serde(default)]
    model_id: Option<String>,
    /// Inline training set; the pipeline is fitted on it.
    #[serde(default)]
    training: Option<Vec<Payload>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VectorizeResponse {
    pub vector: FeatureVector64,
    pub render_hint: RenderHint,
    /// Sampling grid per dimension for curve methods.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grids: Option<Vec<Vec<f64>>>,
    /// Image side for heat maps.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub image_side: Option<usize>,
}

#[derive(Debug, Deserialize)]
struct FormatQuery {
    #[serde(default)]
    format: Option<String>,
}

fn training_sets(training: &[Payload], cfg: &Config) -> ApiResult<Vec<BarcodeSet64>> {
    training.iter().map(|p| payload_barcodes(p, cfg)).collect()
}

async fn vectorize(
    State(state): State<Shared>,
    Query(fmt): Query<FormatQuery>,
    body: Bytes,
) -> ApiResult<Response> {
    compute(move || {
        let cfg = &state.config;
        let req: VectorizeRequest = parse_json(&body)?;
        let spec = spec_of(req.method, &req.params)?;
        let input = payload_barcodes(&req.input, cfg)?;
        let pipeline: Arc<FittedPipeline64> = match (&req.model_id, &req.training) {
            (Some(_), Some(_)) => return Err(ApiError::bad("give either model_id or training")),
            (Some(id), None) => {
                let m = state
                    .models
                    .get(id)
                    .ok_or_else(|| ApiError::new(StatusCode::NOT_FOUND, format!("no model `{id}`")))?;
                if m.spec().method() != spec.method() {
                    return Err(ApiError::bad(format!(
                        "model `{id}` is for {}, not {}",
                        m.spec().method(),
                        spec.method()
                    )));
                }
                m
            }
            (None, Some(t)) => Arc::new(FittedPipeline::fit(&spec, req.policy, &req.dims, &training_sets(t, cfg)?)?),
            (None, None) => {
                if spec.method().is_ensemble() {
                    return Err(barvec::Error::ModelRequired(spec.method().to_string()).into());
                }
                Arc::new(FittedPipeline::fit(&spec, req.policy, &req.dims, std::slice::from_ref(&input))?)
            }
        };
        let vector = pipeline.transform(&input)?;
        let normalized = barvec::barcode::normalize_set(&input, pipeline.policy)?;
        let grids: Option<Vec<Vec<f64>>> = pipeline
            .dims
            .iter()
            .zip(&pipeline.vectorizers)
            .map(|(d, v)| {
                let b = normalized.get(d).cloned().unwrap_or_else(|| Barcode::empty(*d));
                v.grid(&b)
            })
            .collect();
        let image_side = match pipeline.spec() {
            VectorizerSpec::PersistenceImage { resolution, .. } => Some(*resolution),
            _ => None,
        };
        if fmt.format.as_deref() == Some("pgm") {
            let side = image_side.ok_or_else(|| ApiError::bad("pgm output needs persistence_image"))?;
            if pipeline.dims.len() != 1 {
                return Err(ApiError::bad("pgm output needs a single dimension"));
            }
            let rows = image_rows_top_down(&vector.values, side);
            let bytes = encode_pgm(side, side, &rows);
            return Ok((
                [(header::CONTENT_TYPE, HeaderValue::from_static("image/x-portable-graymap"))],
                bytes,
            )
                .into_response());
        }
        Ok(Json(VectorizeResponse {
            render_hint: vector.method.render_hint(),
            vector,
            grids,
            image_side,
        })
        .into_response())
    })
    .await
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FitRequest {
    method: MethodId,
    #[serde(default)]
    params: Params,
    training: Vec<Payload>,
    #[serde(default = "default_dims")]
    dims: Vec<usize>,
    #[serde(default)]
    policy: EssentialPolicy<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelResponse {
    pub model_id: String,
    pub model: FittedPipeline64,
}

async fn fit(State(state): State<Shared>, body: Bytes) -> ApiResult<Json<ModelResponse>> {
    compute(move || {
        let req: FitRequest = parse_json(&body)?;
        let spec = spec_of(req.method, &req.params)?;
        if req.training.is_empty() {
            return Err(ApiError::bad("training set is empty"));
        }
        let sets = training_sets(&req.training, &state.config)?;
        let model = FittedPipeline::fit(&spec, req.policy, &req.dims, &sets)?;
        let model_id = state.models.insert(model.clone());
        Ok(Json(ModelResponse { model_id, model }))
    })
    .await
}

async fn import_model(State(state): State<Shared>, body: Bytes) -> ApiResult<Json<ModelResponse>> {
    let model: FittedPipeline64 = parse_json(&body)?;
    model.validate()?;
    let model_id = state.models.insert(model.clone());
    Ok(Json(ModelResponse { model_id, model }))
}

async fn export_model(State(state): State<Shared>, Path(id): Path<String>) -> ApiResult<Json<FittedPipeline64>> {
    let m = state
        .models
        .get(&id)
        .ok_or_else(|| ApiError::new(StatusCode::NOT_FOUND, format!("no model `{id}`")))?;
    Ok(Json((*m).clone()))
}

pub fn router(config: Config) -> Router {
    let cors = match &config.cors_origin {
        Some(o) => CorsLayer::new()
            .allow_origin(AllowOrigin::exact(
                HeaderValue::from_str(o).expect("valid origin header"),
            ))
            .allow_methods(tower_http::cors::Any)
            .allow_headers(tower_http::cors::Any),
        None => CorsLayer::permissive(),
    };
    let limit = config.body_limit;
    let state = Arc::new(AppState {
        config,
        models: ModelStore::default(),
    });
    let v1 = Router::new()
        .route("/methods", get(methods))
        .route("/barcode", post(barcode))
        .route("/vectorize", post(vectorize))
        .route("/fit", post(fit))
        .route("/models", post(import_model))
        .route("/models/{id}", get(export_model))
        .with_state(state);
    Router::new()
        .nest(&format!("/{API_VERSION}"), v1)
        .layer(DefaultBodyLimit::max(limit))
        .layer(cors)
}
