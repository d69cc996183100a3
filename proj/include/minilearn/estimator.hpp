// Copyright 2026 The Minilearn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "minilearn/errors.hpp"
#include "minilearn/labels.hpp"
#include "minilearn/matrix.hpp"

namespace ml {

using ParamValue = std::variant<long long, double, std::string>;

enum class ParamType { Int, Real, Str };

struct ParamInfo {
    ParamType type;
    ParamValue default_value;
};

// name -> (type, default); the full hyperparameter vocabulary of one kind
using ParamSchema = std::map<std::string, ParamInfo>;

std::string param_to_string(const ParamValue& v);

// Algorithm identifier plus hyperparameters. Construction resolves the kind
// against the estimator registry; setting a name outside the kind's schema
// raises UnsupportedParam. Pipelines carry their step specs and address the
// steps' parameters as "step_name.param".
class EstimatorSpec {
public:
    explicit EstimatorSpec(const std::string& kind);

    static EstimatorSpec pipeline(const std::vector<EstimatorSpec>& steps);
    static EstimatorSpec pipeline(const std::vector<std::pair<std::string, EstimatorSpec>>& named_steps);

    const std::string& kind() const { return kind_; }
    bool is_pipeline() const { return !steps_.empty(); }
    const std::vector<std::pair<std::string, EstimatorSpec>>& steps() const { return steps_; }

    EstimatorSpec& set(const std::string& name, ParamValue value);
    EstimatorSpec with(const std::string& name, ParamValue value) const;

    ParamValue get(const std::string& name) const;
    long long get_int(const std::string& name) const;
    double get_real(const std::string& name) const;
    std::string get_str(const std::string& name) const;

    // effective parameter map (defaults overlaid with explicit settings)
    std::map<std::string, ParamValue> resolved_params() const;

    bool supervised() const;
    bool classifier() const;
    bool transformer() const;
    bool accepts_sample_weight() const;

private:
    EstimatorSpec() = default;

    std::string kind_;
    std::map<std::string, ParamValue> params_;
    std::vector<std::pair<std::string, EstimatorSpec>> steps_;
};

class Model;

// Learned state. Concrete algorithms subclass this; capability defaults
// reject the call.
class ModelState {
public:
    virtual ~ModelState() = default;

    virtual Labels predict(const Matrix& X) const;
    virtual Matrix transform(const Matrix& X) const;
};

// Immutable fitted estimator: the resolved spec, the learned payload and the
// input width it was trained on. Safe to share across threads.
class Model {
public:
    Model(EstimatorSpec spec, std::size_t n_features_in, std::shared_ptr<const ModelState> state)
        : spec_(std::move(spec)), n_features_in_(n_features_in), state_(std::move(state)) {}

    const EstimatorSpec& spec() const { return spec_; }
    std::size_t n_features_in() const { return n_features_in_; }

    Labels predict(const Matrix& X) const;
    Matrix transform(const Matrix& X) const;
    double score(const Matrix& X, const Labels& y) const;

    const ModelState& state() const { return *state_; }

    template <typename T>
    const T* state_as() const {
        return dynamic_cast<const T*>(state_.get());
    }

private:
    void check_width(const Matrix& X) const;

    EstimatorSpec spec_;
    std::size_t n_features_in_;
    std::shared_ptr<const ModelState> state_;
};

Model fit(const EstimatorSpec& spec, const Matrix& X, const Labels* y = nullptr,
          const std::vector<double>* sample_weight = nullptr);

// Mean accuracy for categorical targets, coefficient of determination for
// real ones; both increase with quality.
double accuracy_score(const Labels& truth, const Labels& predicted);
double r2_score(const std::vector<double>& truth, const std::vector<double>& predicted);

// ----------------------------------------------------------------- registry

struct EstimatorTraits {
    bool supervised = false;
    bool classifier = false;
    bool transformer = false;
    bool accepts_sample_weight = false;
    ParamSchema schema;
    std::function<std::shared_ptr<const ModelState>(const EstimatorSpec&, const Matrix&,
                                                    const Labels*, const std::vector<double>*)>
        fit;
};

const EstimatorTraits& traits_for(const std::string& kind);
std::vector<std::string> registered_kinds();

}  // namespace ml
