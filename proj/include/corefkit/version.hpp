#pragma once

namespace corefkit {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1; // JSONL document schema

} // namespace corefkit
