// Copyright 2026 The Minilearn Authors
// SPDX-License-Identifier: Apache-2.0

#include "minilearn/estimator.hpp"

#include <cmath>
#include <set>

#include "minilearn/cluster.hpp"
#include "minilearn/decomposition.hpp"
#include "minilearn/linear.hpp"
#include "minilearn/neighbors.hpp"
#include "minilearn/svm.hpp"

namespace ml {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::Ok: return "Ok";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::UnsupportedParam: return "UnsupportedParam";
        case ErrorCode::NotConverged: return "NotConverged";
        case ErrorCode::WrongCapability: return "WrongCapability";
        case ErrorCode::SingleClass: return "SingleClass";
        case ErrorCode::KTooLarge: return "KTooLarge";
        case ErrorCode::BadK: return "BadK";
        case ErrorCode::ClassTooSmall: return "ClassTooSmall";
        case ErrorCode::UnknownAxis: return "UnknownAxis";
        case ErrorCode::NonTransformerStep: return "NonTransformerStep";
        case ErrorCode::DegenerateDesign: return "DegenerateDesign";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::RaggedRow: return "RaggedRow";
        case ErrorCode::NonAscendingIndex: return "NonAscendingIndex";
        case ErrorCode::BadSpec: return "BadSpec";
        case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

std::string param_to_string(const ParamValue& v) {
    if (std::holds_alternative<long long>(v)) return std::to_string(std::get<long long>(v));
    if (std::holds_alternative<double>(v)) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", std::get<double>(v));
        return buf;
    }
    return std::get<std::string>(v);
}

// ---------------------------------------------------------------- registry

namespace {

ParamValue coerce(const std::string& name, const ParamInfo& info, ParamValue value) {
    switch (info.type) {
        case ParamType::Int:
            if (std::holds_alternative<long long>(value)) return value;
            if (std::holds_alternative<double>(value)) {
                const double d = std::get<double>(value);
                if (d == static_cast<double>(static_cast<long long>(d)))
                    return static_cast<long long>(d);
            }
            throw Error(ErrorCode::InvalidArgument, "parameter '" + name + "' expects an integer");
        case ParamType::Real:
            if (std::holds_alternative<double>(value)) return value;
            if (std::holds_alternative<long long>(value))
                return static_cast<double>(std::get<long long>(value));
            throw Error(ErrorCode::InvalidArgument, "parameter '" + name + "' expects a real");
        case ParamType::Str:
            if (std::holds_alternative<std::string>(value)) return value;
            throw Error(ErrorCode::InvalidArgument, "parameter '" + name + "' expects a string");
    }
    return value;
}

std::vector<double> labels_as_reals(const Labels& y, const std::string& kind) {
    if (y.kind() != Labels::Kind::Real)
        throw Error(ErrorCode::InvalidArgument,
                    kind + " is a regressor and needs real-valued labels");
    return y.real_values();
}

// ------------------------------------------------------------ model states

class LinearModelState final : public ModelState {
public:
    LinearModelState(linear::LinearFit fit, std::vector<std::string> warnings = {})
        : fit_(std::move(fit)), warnings_(std::move(warnings)) {}

    Labels predict(const Matrix& X) const override {
        std::vector<double> out(X.n_samples());
        for (std::size_t i = 0; i < X.n_samples(); ++i)
            out[i] = X.row(i).dot(fit_.weights) + fit_.intercept;
        return Labels::reals(std::move(out));
    }

    const linear::LinearFit& fit() const { return fit_; }
    const std::vector<std::string>& warnings() const { return warnings_; }

private:
    linear::LinearFit fit_;
    std::vector<std::string> warnings_;
};

class SvcModelState final : public ModelState {
public:
    SvcModelState(svm::SvcFit fit, std::vector<std::string> class_names)
        : binary_(std::move(fit)), class_names_(std::move(class_names)) {}
    SvcModelState(svm::MulticlassSvcFit fit, std::vector<std::string> class_names)
        : multi_(std::move(fit)), is_multi_(true), class_names_(std::move(class_names)) {}

    Labels predict(const Matrix& X) const override {
        std::vector<int> codes;
        if (is_multi_) {
            codes = svm::multiclass_svc_predict(multi_, X);
        } else {
            const std::vector<double> d = svm::svc_decision(binary_, X);
            codes.reserve(d.size());
            for (double v : d) codes.push_back(v >= 0.0 ? 1 : 0);
        }
        return Labels::from_codes(std::move(codes), class_names_);
    }

    bool is_multiclass() const { return is_multi_; }
    const svm::SvcFit& binary() const { return binary_; }
    const svm::MulticlassSvcFit& multiclass() const { return multi_; }

private:
    svm::SvcFit binary_;
    svm::MulticlassSvcFit multi_;
    bool is_multi_ = false;
    std::vector<std::string> class_names_;
};

class KnnModelState final : public ModelState {
public:
    KnnModelState(neighbors::KnnParams params, Matrix X, Labels y)
        : params_(params), X_(std::move(X)), y_(y.to_classes()) {
        const bool brute =
            params_.strategy == neighbors::KnnParams::Strategy::Brute ||
            (params_.strategy == neighbors::KnnParams::Strategy::Auto &&
             neighbors::use_brute_force(X_.n_features(), params_.dim_threshold));
        if (!brute) tree_.emplace(X_, params_.leaf_size);
    }

    Labels predict(const Matrix& X) const override {
        const auto& codes = y_.class_codes();
        const int n_classes = static_cast<int>(y_.class_names().size());
        std::vector<int> out;
        out.reserve(X.n_samples());
        for (std::size_t qi = 0; qi < X.n_samples(); ++qi) {
            const Eigen::RowVectorXd q = X.row(qi);
            const std::vector<std::size_t> nn =
                tree_ ? neighbors::knn_query(*tree_, X_, q, params_.k)
                      : neighbors::brute_force_query(X_, q, params_.k);
            std::vector<int> votes(static_cast<std::size_t>(n_classes), 0);
            std::vector<double> dist_sum(static_cast<std::size_t>(n_classes), 0.0);
            for (std::size_t i : nn) {
                const int c = codes[i];
                votes[static_cast<std::size_t>(c)] += 1;
                dist_sum[static_cast<std::size_t>(c)] += std::sqrt((q - X_.row(i)).squaredNorm());
            }
            int best = -1;
            for (int c = 0; c < n_classes; ++c) {
                if (votes[static_cast<std::size_t>(c)] == 0) continue;
                if (best < 0 ||
                    votes[static_cast<std::size_t>(c)] > votes[static_cast<std::size_t>(best)] ||
                    (votes[static_cast<std::size_t>(c)] == votes[static_cast<std::size_t>(best)] &&
                     dist_sum[static_cast<std::size_t>(c)] < dist_sum[static_cast<std::size_t>(best)]))
                    best = c;
            }
            out.push_back(best);
        }
        return Labels::from_codes(std::move(out), y_.class_names());
    }

    const neighbors::BallTree* tree() const { return tree_ ? &*tree_ : nullptr; }

private:
    neighbors::KnnParams params_;
    Matrix X_;
    Labels y_;
    std::optional<neighbors::BallTree> tree_;
};

class PcaModelState final : public ModelState {
public:
    explicit PcaModelState(decomposition::PcaFit fit) : fit_(std::move(fit)) {}

    Matrix transform(const Matrix& X) const override {
        return decomposition::pca_transform(fit_, X);
    }

    const decomposition::PcaFit& fit() const { return fit_; }

private:
    decomposition::PcaFit fit_;
};

class KMeansModelState final : public ModelState {
public:
    explicit KMeansModelState(cluster::KMeansFit fit) : fit_(std::move(fit)) {
        for (Eigen::Index c = 0; c < fit_.centroids.rows(); ++c)
            names_.push_back(std::to_string(c));
    }

    Labels predict(const Matrix& X) const override {
        return Labels::from_codes(cluster::kmeans_predict(fit_, X), names_);
    }

    const cluster::KMeansFit& fit() const { return fit_; }

private:
    cluster::KMeansFit fit_;
    std::vector<std::string> names_;
};

class IdentityModelState final : public ModelState {
public:
    explicit IdentityModelState(std::size_t width) : width_(width) {}

    Matrix transform(const Matrix& X) const override {
        if (X.n_features() != width_)
            throw ShapeMismatchError("feature count does not match the fitted model");
        return X;
    }

private:
    std::size_t width_;
};

class PipelineModelState final : public ModelState {
public:
    PipelineModelState(std::vector<std::pair<std::string, Model>> steps)
        : steps_(std::move(steps)) {}

    Labels predict(const Matrix& X) const override {
        return steps_.back().second.predict(through_transforms(X));
    }

    Matrix transform(const Matrix& X) const override {
        return steps_.back().second.transform(through_transforms(X));
    }

    const std::vector<std::pair<std::string, Model>>& steps() const { return steps_; }

    Matrix through_transforms(const Matrix& X) const {
        Matrix cur = X;
        for (std::size_t s = 0; s + 1 < steps_.size(); ++s)
            cur = steps_[s].second.transform(cur);
        return cur;
    }

private:
    std::vector<std::pair<std::string, Model>> steps_;
};

// ----------------------------------------------------------- trait tables

std::map<std::string, EstimatorTraits> build_registry() {
    std::map<std::string, EstimatorTraits> reg;

    {
        EstimatorTraits t;
        t.supervised = true;
        t.accepts_sample_weight = true;
        t.schema = {
            {"alpha", {ParamType::Real, 1.0}},
            {"l1_ratio", {ParamType::Real, 0.5}},
            {"max_iter", {ParamType::Int, 1000LL}},
            {"tol", {ParamType::Real, 1e-4}},
            {"fit_intercept", {ParamType::Int, 1LL}},
        };
        t.fit = [](const EstimatorSpec& spec, const Matrix& X, const Labels* y,
                   const std::vector<double>* w) -> std::shared_ptr<const ModelState> {
            linear::ElasticNetParams params;
            params.alpha = spec.get_real("alpha");
            params.l1_ratio = spec.get_real("l1_ratio");
            params.max_iter = static_cast<std::size_t>(spec.get_int("max_iter"));
            params.tol = spec.get_real("tol");
            params.fit_intercept = spec.get_int("fit_intercept") != 0;
            return std::make_shared<LinearModelState>(
                linear::elastic_net_fit(params, X, labels_as_reals(*y, "elastic_net"), w));
        };
        reg.emplace("elastic_net", std::move(t));
    }

    {
        EstimatorTraits t;
        t.supervised = true;
        t.schema = {
            {"alpha", {ParamType::Real, 1.0}},
            {"max_knots", {ParamType::Int, 0LL}},
            {"fit_intercept", {ParamType::Int, 1LL}},
        };
        t.fit = [](const EstimatorSpec& spec, const Matrix& X, const Labels* y,
                   const std::vector<double>*) -> std::shared_ptr<const ModelState> {
            const double alpha = spec.get_real("alpha");
            if (alpha < 0.0) throw Error(ErrorCode::InvalidArgument, "alpha must be >= 0");
            const linear::LarsPath path = linear::lars_path(
                X, labels_as_reals(*y, "lasso_lars"),
                static_cast<std::size_t>(spec.get_int("max_knots")), true,
                spec.get_int("fit_intercept") != 0);
            linear::LinearFit fit;
            fit.weights = path.weights_at(alpha);
            fit.intercept = path.intercept_at(alpha);
            fit.n_iter = path.knots.size();
            return std::make_shared<LinearModelState>(std::move(fit), path.warnings);
        };
        reg.emplace("lasso_lars", std::move(t));
    }

    {
        EstimatorTraits t;
        t.supervised = true;
        t.classifier = true;
        t.accepts_sample_weight = true;
        t.schema = {
            {"c", {ParamType::Real, 1.0}},
            {"kernel", {ParamType::Str, std::string("rbf")}},
            {"gamma", {ParamType::Real, 0.0}},
            {"degree", {ParamType::Int, 3LL}},
            {"coef0", {ParamType::Real, 0.0}},
            {"tol", {ParamType::Real, 1e-3}},
            {"max_passes", {ParamType::Int, 0LL}},
            {"cache_rows", {ParamType::Int, 200LL}},
        };
        t.fit = [](const EstimatorSpec& spec, const Matrix& X, const Labels* y,
                   const std::vector<double>* w) -> std::shared_ptr<const ModelState> {
            svm::SvcParams params;
            params.c = spec.get_real("c");
            params.kernel = svm::kernel_from_string(spec.get_str("kernel"), spec.get_real("gamma"),
                                                    spec.get_int("degree"), spec.get_real("coef0"));
            params.tol = spec.get_real("tol");
            params.max_passes = static_cast<std::size_t>(spec.get_int("max_passes"));
            params.cache_rows = static_cast<std::size_t>(spec.get_int("cache_rows"));

            const Labels classes = y->to_classes();
            const int n_classes = static_cast<int>(classes.class_names().size());
            if (n_classes < 2)
                throw Error(ErrorCode::SingleClass, "training data contains a single class");
            if (n_classes == 2) {
                std::vector<int> pm;
                pm.reserve(classes.size());
                for (int c : classes.class_codes()) pm.push_back(c == 1 ? 1 : -1);
                return std::make_shared<SvcModelState>(svm::svc_fit(params, X, pm, w),
                                                       classes.class_names());
            }
            return std::make_shared<SvcModelState>(
                svm::multiclass_svc_fit(params, X, classes.class_codes(), n_classes, w),
                classes.class_names());
        };
        reg.emplace("svc", std::move(t));
    }

    {
        EstimatorTraits t;
        t.supervised = true;
        t.classifier = true;
        t.schema = {
            {"k", {ParamType::Int, 5LL}},
            {"strategy", {ParamType::Str, std::string("auto")}},
            {"leaf_size", {ParamType::Int, 30LL}},
            {"dim_threshold", {ParamType::Int, 20LL}},
        };
        t.fit = [](const EstimatorSpec& spec, const Matrix& X, const Labels* y,
                   const std::vector<double>*) -> std::shared_ptr<const ModelState> {
            neighbors::KnnParams params;
            params.k = static_cast<std::size_t>(spec.get_int("k"));
            params.leaf_size = static_cast<std::size_t>(spec.get_int("leaf_size"));
            params.dim_threshold = static_cast<std::size_t>(spec.get_int("dim_threshold"));
            const std::string& strategy = spec.get_str("strategy");
            if (strategy == "auto")
                params.strategy = neighbors::KnnParams::Strategy::Auto;
            else if (strategy == "ball_tree")
                params.strategy = neighbors::KnnParams::Strategy::BallTree;
            else if (strategy == "brute")
                params.strategy = neighbors::KnnParams::Strategy::Brute;
            else
                throw Error(ErrorCode::InvalidArgument, "unknown strategy '" + strategy + "'");
            if (params.k < 1 || params.k > X.n_samples())
                throw Error(ErrorCode::KTooLarge, "k must lie in 1..n_samples");
            return std::make_shared<KnnModelState>(params, X, *y);
        };
        reg.emplace("knn", std::move(t));
    }

    {
        EstimatorTraits t;
        t.transformer = true;
        t.schema = {
            {"n_components", {ParamType::Int, 0LL}},
            {"n_oversamples", {ParamType::Int, 10LL}},
            {"n_power_iters", {ParamType::Int, 4LL}},
            {"seed", {ParamType::Int, 0LL}},
            {"solver", {ParamType::Str, std::string("auto")}},
        };
        t.fit = [](const EstimatorSpec& spec, const Matrix& X, const Labels*,
                   const std::vector<double>*) -> std::shared_ptr<const ModelState> {
            decomposition::PcaParams params;
            params.n_components = static_cast<std::size_t>(spec.get_int("n_components"));
            params.n_oversamples = static_cast<std::size_t>(spec.get_int("n_oversamples"));
            params.n_power_iters = static_cast<std::size_t>(spec.get_int("n_power_iters"));
            params.seed = static_cast<std::uint64_t>(spec.get_int("seed"));
            const std::string& solver = spec.get_str("solver");
            if (solver == "auto")
                params.solver = decomposition::PcaParams::Solver::Auto;
            else if (solver == "exact")
                params.solver = decomposition::PcaParams::Solver::Exact;
            else if (solver == "randomized")
                params.solver = decomposition::PcaParams::Solver::Randomized;
            else
                throw Error(ErrorCode::InvalidArgument, "unknown solver '" + solver + "'");
            return std::make_shared<PcaModelState>(decomposition::pca_fit(params, X));
        };
        reg.emplace("pca", std::move(t));
    }

    {
        EstimatorTraits t;
        t.accepts_sample_weight = true;
        t.schema = {
            {"k", {ParamType::Int, 8LL}},
            {"n_init", {ParamType::Int, 10LL}},
            {"max_iter", {ParamType::Int, 300LL}},
            {"tol", {ParamType::Real, 1e-4}},
            {"seed", {ParamType::Int, 0LL}},
        };
        t.fit = [](const EstimatorSpec& spec, const Matrix& X, const Labels*,
                   const std::vector<double>* w) -> std::shared_ptr<const ModelState> {
            cluster::KMeansParams params;
            params.k = static_cast<std::size_t>(spec.get_int("k"));
            params.n_init = static_cast<std::size_t>(spec.get_int("n_init"));
            params.max_iter = static_cast<std::size_t>(spec.get_int("max_iter"));
            params.tol = spec.get_real("tol");
            params.seed = static_cast<std::uint64_t>(spec.get_int("seed"));
            return std::make_shared<KMeansModelState>(cluster::kmeans_fit(params, X, w));
        };
        reg.emplace("kmeans", std::move(t));
    }

    {
        EstimatorTraits t;
        t.transformer = true;
        t.fit = [](const EstimatorSpec&, const Matrix& X, const Labels*,
                   const std::vector<double>*) -> std::shared_ptr<const ModelState> {
            return std::make_shared<IdentityModelState>(X.n_features());
        };
        reg.emplace("identity", std::move(t));
    }

    return reg;
}

const std::map<std::string, EstimatorTraits>& registry() {
    static const std::map<std::string, EstimatorTraits> reg = build_registry();
    return reg;
}

}  // namespace

const EstimatorTraits& traits_for(const std::string& kind) {
    const auto& reg = registry();
    const auto it = reg.find(kind);
    if (it == reg.end())
        throw Error(ErrorCode::InvalidArgument, "unknown estimator kind '" + kind + "'");
    return it->second;
}

std::vector<std::string> registered_kinds() {
    std::vector<std::string> out;
    for (const auto& [kind, traits] : registry()) out.push_back(kind);
    return out;
}

// ------------------------------------------------------------ EstimatorSpec

EstimatorSpec::EstimatorSpec(const std::string& kind) : kind_(kind) {
    traits_for(kind);  // reject unknown kinds up front
}

EstimatorSpec EstimatorSpec::pipeline(const std::vector<EstimatorSpec>& steps) {
    std::vector<std::pair<std::string, EstimatorSpec>> named;
    named.reserve(steps.size());
    for (const auto& s : steps) named.emplace_back(s.kind(), s);
    return pipeline(named);
}

EstimatorSpec EstimatorSpec::pipeline(
    const std::vector<std::pair<std::string, EstimatorSpec>>& named_steps) {
    if (named_steps.empty())
        throw Error(ErrorCode::InvalidArgument, "pipeline needs at least one step");
    std::set<std::string> seen;
    for (const auto& [name, step] : named_steps) {
        if (!seen.insert(name).second)
            throw Error(ErrorCode::InvalidArgument, "duplicate pipeline step name '" + name + "'");
        if (step.is_pipeline())
            throw Error(ErrorCode::InvalidArgument, "pipelines do not nest");
    }
    for (std::size_t i = 0; i + 1 < named_steps.size(); ++i) {
        if (!named_steps[i].second.transformer())
            throw Error(ErrorCode::NonTransformerStep,
                        "pipeline step '" + named_steps[i].first + "' is not a transformer");
    }
    EstimatorSpec spec;
    spec.kind_ = "pipeline";
    spec.steps_ = named_steps;
    return spec;
}

EstimatorSpec& EstimatorSpec::set(const std::string& name, ParamValue value) {
    if (is_pipeline()) {
        const auto dot = name.find('.');
        if (dot == std::string::npos)
            throw UnsupportedParamError("pipeline parameters are addressed as 'step.param', got '" +
                                        name + "'");
        const std::string step_name = name.substr(0, dot);
        for (auto& [sname, sspec] : steps_) {
            if (sname == step_name) {
                sspec.set(name.substr(dot + 1), std::move(value));
                return *this;
            }
        }
        throw UnsupportedParamError("no pipeline step named '" + step_name + "'");
    }
    const auto& schema = traits_for(kind_).schema;
    const auto it = schema.find(name);
    if (it == schema.end())
        throw UnsupportedParamError("estimator '" + kind_ + "' has no parameter '" + name + "'");
    params_[name] = coerce(name, it->second, std::move(value));
    return *this;
}

EstimatorSpec EstimatorSpec::with(const std::string& name, ParamValue value) const {
    EstimatorSpec copy = *this;
    copy.set(name, std::move(value));
    return copy;
}

ParamValue EstimatorSpec::get(const std::string& name) const {
    if (is_pipeline()) {
        const auto dot = name.find('.');
        if (dot != std::string::npos) {
            for (const auto& [sname, sspec] : steps_)
                if (sname == name.substr(0, dot)) return sspec.get(name.substr(dot + 1));
        }
        throw UnsupportedParamError("no pipeline parameter '" + name + "'");
    }
    const auto set_it = params_.find(name);
    if (set_it != params_.end()) return set_it->second;
    const auto& schema = traits_for(kind_).schema;
    const auto it = schema.find(name);
    if (it == schema.end())
        throw UnsupportedParamError("estimator '" + kind_ + "' has no parameter '" + name + "'");
    return it->second.default_value;
}

long long EstimatorSpec::get_int(const std::string& name) const {
    return std::get<long long>(get(name));
}

double EstimatorSpec::get_real(const std::string& name) const {
    const ParamValue v = get(name);
    if (std::holds_alternative<long long>(v))
        return static_cast<double>(std::get<long long>(v));
    return std::get<double>(v);
}

std::string EstimatorSpec::get_str(const std::string& name) const {
    return std::get<std::string>(get(name));
}

std::map<std::string, ParamValue> EstimatorSpec::resolved_params() const {
    std::map<std::string, ParamValue> out;
    if (is_pipeline()) {
        for (const auto& [sname, sspec] : steps_)
            for (const auto& [pname, pvalue] : sspec.resolved_params())
                out[sname + "." + pname] = pvalue;
        return out;
    }
    for (const auto& [pname, pinfo] : traits_for(kind_).schema) out[pname] = pinfo.default_value;
    for (const auto& [pname, pvalue] : params_) out[pname] = pvalue;
    return out;
}

bool EstimatorSpec::supervised() const {
    if (is_pipeline()) return steps_.back().second.supervised();
    return traits_for(kind_).supervised;
}

bool EstimatorSpec::classifier() const {
    if (is_pipeline()) return steps_.back().second.classifier();
    return traits_for(kind_).classifier;
}

bool EstimatorSpec::transformer() const {
    if (is_pipeline()) return steps_.back().second.transformer();
    return traits_for(kind_).transformer;
}

bool EstimatorSpec::accepts_sample_weight() const {
    if (is_pipeline()) return false;
    return traits_for(kind_).accepts_sample_weight;
}

// ------------------------------------------------------------------- Model

Labels ModelState::predict(const Matrix&) const {
    throw WrongCapabilityError("estimator does not predict");
}

Matrix ModelState::transform(const Matrix&) const {
    throw WrongCapabilityError("estimator is not a transformer");
}

void Model::check_width(const Matrix& X) const {
    if (X.n_features() != n_features_in_)
        throw ShapeMismatchError("input has " + std::to_string(X.n_features()) +
                                 " features, model was fitted with " +
                                 std::to_string(n_features_in_));
}

Labels Model::predict(const Matrix& X) const {
    check_width(X);
    return state_->predict(X);
}

Matrix Model::transform(const Matrix& X) const {
    check_width(X);
    return state_->transform(X);
}

double Model::score(const Matrix& X, const Labels& y) const {
    check_width(X);
    if (!spec_.supervised())
        throw WrongCapabilityError("score requires a supervised estimator");
    if (y.size() != X.n_samples())
        throw ShapeMismatchError("label length does not match sample count");
    if (spec_.classifier()) {
        return accuracy_score(y, predict(X));
    }
    const Labels predicted = predict(X);
    return r2_score(y.real_values(), predicted.real_values());
}

double accuracy_score(const Labels& truth, const Labels& predicted) {
    if (truth.size() != predicted.size())
        throw ShapeMismatchError("label vectors differ in length");
    if (truth.size() == 0) return 0.0;
    const Labels t = truth.to_classes();
    std::size_t hits = 0;
    for (std::size_t i = 0; i < t.size(); ++i)
        if (t.name_of(i) == predicted.name_of(i)) ++hits;
    return static_cast<double>(hits) / static_cast<double>(t.size());
}

double r2_score(const std::vector<double>& truth, const std::vector<double>& predicted) {
    if (truth.size() != predicted.size())
        throw ShapeMismatchError("label vectors differ in length");
    if (truth.empty()) return 0.0;
    double mean = 0.0;
    for (double v : truth) mean += v;
    mean /= static_cast<double>(truth.size());
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        ss_res += (truth[i] - predicted[i]) * (truth[i] - predicted[i]);
        ss_tot += (truth[i] - mean) * (truth[i] - mean);
    }
    if (ss_tot == 0.0) return ss_res == 0.0 ? 1.0 : 0.0;
    return 1.0 - ss_res / ss_tot;
}

// --------------------------------------------------------------------- fit

Model fit(const EstimatorSpec& spec, const Matrix& X, const Labels* y,
          const std::vector<double>* sample_weight) {
    if (X.n_samples() < 1)
        throw Error(ErrorCode::InvalidArgument, "fit requires at least one sample");
    if (spec.supervised()) {
        if (!y)
            throw Error(ErrorCode::InvalidArgument,
                        "estimator '" + spec.kind() + "' is supervised and needs labels");
        if (y->size() != X.n_samples())
            throw ShapeMismatchError("label length does not match sample count");
    } else if (y) {
        throw Error(ErrorCode::InvalidArgument,
                    "estimator '" + spec.kind() + "' is unsupervised; labels were given");
    }
    if (sample_weight) {
        if (!spec.accepts_sample_weight())
            throw UnsupportedParamError("estimator '" + spec.kind() +
                                        "' does not accept sample weights");
        if (sample_weight->size() != X.n_samples())
            throw ShapeMismatchError("sample_weight length does not match sample count");
    }

    if (spec.is_pipeline()) {
        std::vector<std::pair<std::string, Model>> fitted;
        Matrix cur = X;
        const auto& steps = spec.steps();
        for (std::size_t s = 0; s < steps.size(); ++s) {
            const bool last = s + 1 == steps.size();
            const Labels* step_y = (last && steps[s].second.supervised()) ? y : nullptr;
            Model m = fit(steps[s].second, cur, step_y, nullptr);
            if (!last) cur = m.transform(cur);
            fitted.emplace_back(steps[s].first, std::move(m));
        }
        return Model(spec, X.n_features(),
                     std::make_shared<PipelineModelState>(std::move(fitted)));
    }

    auto state = traits_for(spec.kind()).fit(spec, X, y, sample_weight);
    return Model(spec, X.n_features(), std::move(state));
}

}  // namespace ml
