#pragma once

#include "rescalk/tensor.hpp"

namespace rescalk {

/// r x T matrix of outgoing group activity: entry (g,t) is the row sum of
/// R_t over columns j != g. Pass include_diagonal for the sensitivity
/// variant that keeps the self-interaction term.
Matrix group_activity(const CoreTensor& R, bool include_diagonal = false);

/// Time-summed interaction matrix S = sum_t R_t, rescaled by its maximum so
/// the largest entry is exactly 1. Throws DegenerateInputError when R has
/// no positive entry.
Matrix interaction_summary(const CoreTensor& R);

}  // namespace rescalk
