// Copyright 2026 The AVS Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef AVS_TABLE_OP_HPP
#define AVS_TABLE_OP_HPP

namespace avs {

// Control-plane mutation kind shared by every runtime-configurable table.
enum class TableOp { add, modify, del };

}  // namespace avs

#endif  // AVS_TABLE_OP_HPP
