#pragma once

#include <ostream>
#include <vector>

#include "corefkit/enrichment.hpp"
#include "corefkit/util.hpp"

namespace corefkit {

/// One sentence per line, tokens joined by single spaces; tag tokens are
/// written verbatim. The optional sidecar gets "doc_id<TAB>sent_index" per
/// emitted line, mapping output lines back to their source sentences.
inline void write_tagged_text(const std::vector<EnrichedSentence>& sentences, std::ostream& out,
                              std::ostream* line_index = nullptr) {
  for (const EnrichedSentence& es : sentences) {
    out << join(es.tokens) << '\n';
    if (line_index) *line_index << es.doc_id << '\t' << es.sent_index << '\n';
  }
}

} // namespace corefkit
