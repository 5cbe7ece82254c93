#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "stockfc/marketdata.hpp"

namespace stockfc {

/// Layer sizes of a single-hidden-layer network. The parameter vector holds
/// input->hidden weights, hidden->output weights, then one shared hidden bias
/// and one shared output bias.
struct Topology {
    std::size_t inputs = 2;
    std::size_t hidden = 8;
    std::size_t outputs = 2;

    std::size_t encoded_length() const { return inputs * hidden + hidden * outputs + 2; }
};

inline constexpr Topology kDefaultTopology{};

double sigmoid(double z);

/// Feedforward network with logistic activations on the hidden and output
/// layers. Immutable once decoded.
class Network {
public:
    /// Unpacks a flat parameter vector. Gene layout:
    ///   [0, I*H)            input->hidden, row-major by hidden node
    ///   [I*H, I*H + H*O)    hidden->output, row-major by output node
    ///   [I*H + H*O]         hidden bias
    ///   [I*H + H*O + 1]     output bias
    /// Throws std::invalid_argument on a length mismatch or non-finite gene.
    static Network decode(std::span<const double> genes, const Topology& topology = kDefaultTopology);

    std::vector<double> encode() const;

    std::vector<double> forward(std::span<const double> input) const;

    /// Allocation-free forward pass; `hidden_scratch` needs topology.hidden slots.
    void forward_into(std::span<const double> input, std::span<double> hidden_scratch,
                      std::span<double> output) const;

    const Topology& topology() const { return topology_; }
    double input_hidden_weight(std::size_t hidden, std::size_t input) const;
    double hidden_output_weight(std::size_t output, std::size_t hidden) const;
    double hidden_bias() const { return hidden_bias_; }
    double output_bias() const { return output_bias_; }

private:
    Topology topology_;
    std::vector<double> w_ih_; // hidden x inputs
    std::vector<double> w_ho_; // outputs x hidden
    double hidden_bias_ = 0.0;
    double output_bias_ = 0.0;
};

/// Training fitness: RMSE of the open predictions and RMSE of the close
/// predictions over every pair, averaged. Needs a 2-input 2-output topology.
double fitness(std::span<const double> genes, std::span<const SamplePair> pairs,
               const Topology& topology = kDefaultTopology);

} // namespace stockfc
