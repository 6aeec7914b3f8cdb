#include "proxevi/tape.hpp"

namespace proxevi::ad {

Tape*& active_tape() {
    thread_local Tape* tape = nullptr;
    return tape;
}

std::vector<double> backward(Tape& tape, Var output, std::size_t n_params) {
    std::vector<double> adjoints = tape.gradient(output);
    if (n_params > adjoints.size())
        throw ArgumentError("backward: parameter count exceeds tape size");
    adjoints.resize(n_params);
    return adjoints;
}

}  // namespace proxevi::ad
