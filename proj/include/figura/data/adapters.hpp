#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "figura/data/dataset.hpp"

// Converters from each corpus's distribution layout to GoldInstance. Errors
// are ParseError with a 1-based line (record) number.
//
// PSU_CMC          Column text: `# id = <id>` and optional `# register = <r>`
//                  comment lines open a sentence, then one `surface<TAB>label`
//                  line per token (label MRW, MFlag or literal; M/L/O also
//                  accepted). A blank line closes the sentence.
// CMC,
// CHINESE_MCORPUS  CSV with header `id,text,label`; label metaphor/literal or 1/0.
//                  Optional `register` and `split` columns.
// CMDAG            JSON array or JSON lines of {id, text, tenor, vehicle,
//                  ground}; every instance is metaphor-positive.
// NLPCC2024_T9     JSON array or JSON lines of {id, text, source_domain,
//                  target_domain}; every instance is metaphor-positive.
// CHINESE_SIMILE   TSV `id<TAB>text<TAB>label<TAB>tenor<TAB>vehicle`, label 1/0,
//                  tenor and vehicle empty for non-similes. A first line
//                  starting with `id<TAB>` is treated as a header.
// CONFIGURE        JSON lines of {id, text, figure, fragment?}; figure
//                  "metaphor" maps to metaphor and any other figure to other.
//
// Span surfaces are located at their first occurrence in the text; a surface
// that does not occur is kept as free text.
namespace figura::data {

std::vector<GoldInstance> import_native(DatasetName name, std::istream& in);
std::vector<GoldInstance> import_native(DatasetName name, const std::filesystem::path& path);

}  // namespace figura::data
