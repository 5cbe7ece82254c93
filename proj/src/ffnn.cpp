#include "stockfc/ffnn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace stockfc {

double sigmoid(double z)
{
    return 1.0 / (1.0 + std::exp(-z));
}

Network Network::decode(std::span<const double> genes, const Topology& topology)
{
    if (topology.inputs == 0 || topology.hidden == 0 || topology.outputs == 0)
        throw std::invalid_argument("topology layer sizes must be at least 1");
    if (genes.size() != topology.encoded_length()) {
        throw std::invalid_argument("gene vector length " + std::to_string(genes.size()) +
                                    " does not match topology length " +
                                    std::to_string(topology.encoded_length()));
    }
    for (double g : genes) {
        if (!std::isfinite(g))
            throw std::invalid_argument("gene vector contains a non-finite value");
    }
    Network net;
    net.topology_ = topology;
    const std::size_t n_ih = topology.inputs * topology.hidden;
    const std::size_t n_ho = topology.hidden * topology.outputs;
    net.w_ih_.assign(genes.begin(), genes.begin() + n_ih);
    net.w_ho_.assign(genes.begin() + n_ih, genes.begin() + n_ih + n_ho);
    net.hidden_bias_ = genes[n_ih + n_ho];
    net.output_bias_ = genes[n_ih + n_ho + 1];
    return net;
}

std::vector<double> Network::encode() const
{
    std::vector<double> genes;
    genes.reserve(topology_.encoded_length());
    genes.insert(genes.end(), w_ih_.begin(), w_ih_.end());
    genes.insert(genes.end(), w_ho_.begin(), w_ho_.end());
    genes.push_back(hidden_bias_);
    genes.push_back(output_bias_);
    return genes;
}

double Network::input_hidden_weight(std::size_t hidden, std::size_t input) const
{
    return w_ih_.at(hidden * topology_.inputs + input);
}

double Network::hidden_output_weight(std::size_t output, std::size_t hidden) const
{
    return w_ho_.at(output * topology_.hidden + hidden);
}

void Network::forward_into(std::span<const double> input, std::span<double> hidden_scratch,
                           std::span<double> output) const
{
    const std::size_t ni = topology_.inputs;
    const std::size_t nh = topology_.hidden;
    for (std::size_t j = 0; j < nh; ++j) {
        double z = hidden_bias_;
        const double* w = &w_ih_[j * ni];
        for (std::size_t i = 0; i < ni; ++i)
            z += w[i] * input[i];
        hidden_scratch[j] = sigmoid(z);
    }
    for (std::size_t k = 0; k < topology_.outputs; ++k) {
        double z = output_bias_;
        const double* w = &w_ho_[k * nh];
        for (std::size_t j = 0; j < nh; ++j)
            z += w[j] * hidden_scratch[j];
        output[k] = sigmoid(z);
    }
}

std::vector<double> Network::forward(std::span<const double> input) const
{
    if (input.size() != topology_.inputs)
        throw std::invalid_argument("forward: input size does not match topology");
    std::vector<double> hidden(topology_.hidden);
    std::vector<double> out(topology_.outputs);
    forward_into(input, hidden, out);
    return out;
}

double fitness(std::span<const double> genes, std::span<const SamplePair> pairs,
               const Topology& topology)
{
    if (pairs.empty())
        throw std::invalid_argument("fitness: empty pair list");
    if (topology.inputs != 2 || topology.outputs != 2)
        throw std::invalid_argument("fitness: price pairs need a 2-input, 2-output topology");
    const Network net = Network::decode(genes, topology);
    const std::size_t nh = topology.hidden;

    // Same arithmetic as forward_into, one layer at a time over a block of
    // pairs so the inner loops run over contiguous arrays.
    constexpr std::size_t kBlock = 64;
    std::array<double, kBlock> x0{}, x1{}, z{};
    std::vector<double> hidden(nh * kBlock);
    double sq[2] = {0.0, 0.0};
    for (std::size_t start = 0; start < pairs.size(); start += kBlock) {
        const std::size_t m = std::min(kBlock, pairs.size() - start);
        for (std::size_t p = 0; p < m; ++p) {
            x0[p] = pairs[start + p].input[0];
            x1[p] = pairs[start + p].input[1];
        }
        for (std::size_t j = 0; j < nh; ++j) {
            const double w0 = net.input_hidden_weight(j, 0);
            const double w1 = net.input_hidden_weight(j, 1);
            const double b = net.hidden_bias();
            double* h = &hidden[j * kBlock];
            for (std::size_t p = 0; p < m; ++p)
                h[p] = sigmoid(b + w0 * x0[p] + w1 * x1[p]);
        }
        for (std::size_t k = 0; k < 2; ++k) {
            z.fill(net.output_bias());
            for (std::size_t j = 0; j < nh; ++j) {
                const double w = net.hidden_output_weight(k, j);
                const double* h = &hidden[j * kBlock];
                for (std::size_t p = 0; p < m; ++p)
                    z[p] += w * h[p];
            }
            for (std::size_t p = 0; p < m; ++p) {
                const double e = pairs[start + p].target[k] - sigmoid(z[p]);
                sq[k] += e * e;
            }
        }
    }
    const double n = static_cast<double>(pairs.size());
    return 0.5 * (std::sqrt(sq[0] / n) + std::sqrt(sq[1] / n));
}

} // namespace stockfc
