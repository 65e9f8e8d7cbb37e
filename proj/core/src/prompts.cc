#include "ttseval/prompts.h"

#include "ttseval/errors.h"

namespace ttseval {
namespace {

void require_text(std::string_view text, const char* what) {
  if (text.empty()) throw PreconditionError(std::string(what) + " is empty");
}

constexpr std::string_view kPhenotype =
    R"(You are an expert physician.  Determine if the patient described in the following case report has either sepsis or septic shock, as defined by the Sepsis-3 criteria, which correspond to having a (1) suspected or confirmed infection and (2) blood pressure/respiratory rate/mental status abnormalities. If the information is not present, use your best judgment based on the information available. Reply 1 for sepsis, 0 otherwise. Reply with the number 0 or 1 only in \boxed{\n TEXT HERE \n}with no explanation.

Here is the case: )";

constexpr std::string_view kRole = "You are a physician. ";

constexpr std::string_view kInstructions =
    "Extract the clinical events and the related time stamp from the case "
    "report. The admission event has timestamp 0. If the event is not "
    "available, we treat the event, e.g. current main clinical diagnosis or "
    "treatment with timestamp 0. The events happened before event with 0 "
    "timestamp have negative time, the ones after the event with 0 timestamp "
    "have positive time. The timestamp are in hours. The unit will be omitted "
    "when output the result. If there is no temporal information of the "
    "event, please use your knowledge and events with temporal expression "
    "before and after the events to provide an approximation. We want to "
    "predict the future events given the events happened in history. ";

constexpr std::string_view kExampleLead =
    "For example, here is the case report.\n\n";

constexpr std::string_view kExampleCase =
    "An 18-year-old male was admitted to the hospital with a 3-day history of "
    "fever and rash. Four weeks ago, he was diagnosed with acne and received "
    "the treatment with minocycline, 100 mg daily, for 3 weeks. With "
    "increased WBC count, eosinophilia, and systemic involvement, this "
    "patient was diagnosed with DRESS syndrome. The fever and rash persisted "
    "through admission, and diffuse erythematous or maculopapular eruption "
    "with pruritus was present. One day later the patient was discharged.";

constexpr std::string_view kExampleReasoning =
    "Let's find the locations of event in the case report, it shows that four "
    "weeks ago of fever and rash, four weeks ago, he was diagnosed with acne "
    "and receive treatment. So the event of fever and rash happen four weeks "
    "ago, 672 hours, it is before admitted to the hospital, so the time stamp "
    "is -672. diffuse erythematous or maculopapular eruption with pruritus "
    "was documented on the admission exam, so the time stamp is 0 hours, "
    "since it happens right at admission. DRESS syndrome has no specific "
    "time, but it should happen soon after admission to the hospital, so we "
    "use our clinical judgment to give the diagnosis of DRESS syndrome the "
    "timestamp 0. Then the output should look like";

// Printed spacing is irregular ("acne |  -672", "eosinophilia| 0") and the
// "pruritis" spelling is kept as printed.
constexpr std::string_view kExampleRows =
    "18 years old | 0\n"
    "male | 0\n"
    "admitted to the hospital | 0\n"
    "fever | -72\n"
    "rash | -72\n"
    "acne |  -672\n"
    "minocycline |  -672\n"
    "increased WBC count | 0\n"
    "eosinophilia| 0\n"
    "systemic involvement| 0\n"
    "diffuse erythematous or maculopapular eruption| 0\n"
    "pruritis | 0\n"
    "DRESS syndrome | 0\n"
    "fever persisted | 0\n"
    "rash persisted | 0\n"
    "discharged | 24";

// Interval augmentation of the same example. End times follow the case
// text: the fever and rash last until admission, minocycline runs 3 weeks,
// the DRESS admission ends at discharge.
constexpr std::string_view kIntervalRows =
    "18 years old | 0 | 0\n"
    "male | 0 | 0\n"
    "admitted to the hospital | 0 | 0\n"
    "fever | -72 | 0\n"
    "rash | -72 | 0\n"
    "acne | -672 | -672\n"
    "minocycline | -672 | -168\n"
    "increased WBC count | 0 | 0\n"
    "eosinophilia | 0 | 0\n"
    "systemic involvement | 0 | 0\n"
    "diffuse erythematous or maculopapular eruption | 0 | 0\n"
    "pruritis | 0 | 0\n"
    "DRESS syndrome | 0 | 24\n"
    "fever persisted | 0 | 0\n"
    "rash persisted | 0 | 0\n"
    "discharged | 24 | 24";

constexpr std::string_view kIntervalTypeRows =
    "18 years old | 0 | 0 | Factual\n"
    "male | 0 | 0 | Factual\n"
    "admitted to the hospital | 0 | 0 | Factual\n"
    "fever | -72 | 0 | Factual\n"
    "rash | -72 | 0 | Factual\n"
    "acne | -672 | -672 | Historical\n"
    "minocycline | -672 | -168 | Historical\n"
    "increased WBC count | 0 | 0 | Factual\n"
    "eosinophilia | 0 | 0 | Factual\n"
    "systemic involvement | 0 | 0 | Factual\n"
    "diffuse erythematous or maculopapular eruption | 0 | 0 | Factual\n"
    "pruritis | 0 | 0 | Factual\n"
    "DRESS syndrome | 0 | 24 | Factual\n"
    "fever persisted | 0 | 0 | Factual\n"
    "rash persisted | 0 | 0 | Factual\n"
    "discharged | 24 | 24 | Factual";

constexpr std::string_view kExpansion =
    "Separate conjunctive phrases into its component events and assign them "
    "the same timestamp (for example, the separation of 'fever and rash' into "
    "2 events: 'fever' and 'rash'). ";

constexpr std::string_view kDurationTwoColumn =
    "If the event has duration, assign the event time as the start of the "
    "time interval. ";

constexpr std::string_view kDurationInterval =
    "If the event has duration, assign the start time as the start of the "
    "time interval and the end time as the end of the time interval; if the "
    "event has no duration, use the same value for the start and end time. ";

constexpr std::string_view kSpanRules =
    "Attempt to use the text span without modifications except 'history of' "
    "where applicable. Include all patient events, even if they appear in "
    "the discussion; do not omit any events; include termination/"
    "discontinuation events; include the pertinent negative findings, like "
    "'no shortness of breath' and 'denies chest pain'.  ";

constexpr std::string_view kColumnsTwo =
    "Show the events and timestamps in rows, each row has two columns: one "
    "column for the event, the other column for the timestamp.  The time is a "
    "numeric value in hour unit. The two columns are separated by a pipe '|' "
    "as a bar-separated file. ";

constexpr std::string_view kColumnsInterval =
    "Show the events and timestamps in rows, each row has three columns: one "
    "column for the event, one column for the start time, and one column for "
    "the end time.  The time is a numeric value in hour unit. The three "
    "columns are separated by a pipe '|' as a bar-separated file. ";

constexpr std::string_view kColumnsIntervalType =
    "Show the events and timestamps in rows, each row has four columns: one "
    "column for the event, one column for the start time, one column for the "
    "end time, and one column for the event type, where event type is one "
    "of: Factual, Possible, Hypothetical, Conditional, Negated, Historical, "
    "Uncertain.  The time is a numeric value in hour unit. The four columns "
    "are separated by a pipe '|' as a bar-separated file. ";

constexpr std::string_view kClosing =
    "Skip the title of the table. Reply with the table only. Create a table "
    "from the following case: ";

std::string example_block(std::string_view rows) {
  std::string block(kExampleLead);
  block += kExampleCase;
  block += "\n\n";
  block += kExampleReasoning;
  block += "\n\n";
  block += rows;
  block += "\n\n";
  return block;
}

constexpr std::string_view kCategory =
    R"(You are a medical professional. You are tasked with categorizing clinical events extracted from case reports.

Assign the following clinical event to one of these categories.

The categories are:

Patient Background and Medical History: 0,

Clinical Presentation and Examination Findings: 1,

Diagnostic Testing and Results: 2,

Clinical Management and Interventions: 3,

Clinical Course, Outcomes, and Follow‐up: 4,

Other or Unknown: 5

The categories are defined as follows:

Patient Background and Medical History: (Includes demographic details, prior medical diagnoses, past surgical histories, medication use as part of chronic history, and other baseline background information.),

Clinical Presentation and Examination Findings: (Includes symptoms at presentation, physical exam findings—including vital signs, neurological scores that reflect exam observations—and other immediate clinical observations.),

Diagnostic Testing and Results: (Includes all imaging studies, laboratory tests, diagnostic procedures and their reported findings, and formal diagnostic conclusions reached via workup.),

Clinical Management and Interventions: (Includes all treatments, procedures, medications administered acutely, operations, supportive care measures, and decisions/interventions intended to alter the patient’s condition.),

Clinical Course, Outcomes, and Follow‐up: (Includes statements about change in clinical status, response to treatment, complications, transitions in care, recovery, discharge, and long‐term outcomes.),

Other or Unknown: (For events that do not clearly fit into any of the above five categories.)

For example, here is a list of clinical event text and the corresponding category:

Examples:

"60-year-old female" → 0

"history of atrial fibrillation" → 0

"weighed 95 kg" → 0

"Impaired consciousness" → 1

"high-grade fever" → 1

"persistently high-temperature spikes" → 1

"Head CT" → 2

"no hepatitis A" → 2

"stage IV lymphoma" → 2

"successfully treated with fidaxomicin" → 3

"shifted to cefepime" → 3

"intravenous immunoglobulins for 5 days" → 3

"follow-up evaluations were recommended" → 4

"transferred to a geriatric medicine unit" → 4

"Discharge" → 4

"he" → 5

"confined, 5

"other symptoms" → 5

Event: "{event_text}"

Respond with only the corresponding integer (0-5) from the list above.
You have to pick only one category for each event.
If there is no clear category, choose the category 5 that corresponds to "Other or Unknown" category.
If there is more than one category, choose the category that you think is most relevant one.
Do NOT include any extra text in your response. Do NOT show your thought process.
Only provide the integer corresponding to the category and nothing else.

Format your response as:

Response: <integer>
)";

constexpr std::string_view kDemographics =
    "You are an expert physician. Read the following case report. Report the "
    "number of distinct patient cases it describes, the age in years of the "
    "patient, and the gender of the patient. Reply with a single row of "
    "three columns separated by a pipe '|': the number of cases, the age in "
    "years, and the gender (male, female, or unknown). Write unknown when "
    "the age is not stated. Reply with the row only.\n\nHere is the case: ";

}  // namespace

ChatRequest build_phenotype_prompt(std::string_view case_text) {
  require_text(case_text, "case text");
  ChatRequest request;
  request.user_text = std::string(kPhenotype) + std::string(case_text);
  return request;
}

ChatRequest build_annotation_prompt(std::string_view case_text,
                                    PromptVariant variant) {
  require_text(case_text, "case text");
  std::string_view rows = kExampleRows;
  std::string_view duration = kDurationTwoColumn;
  std::string_view columns = kColumnsTwo;
  if (variant == PromptVariant::kInterval) {
    rows = kIntervalRows;
    duration = kDurationInterval;
    columns = kColumnsInterval;
  } else if (variant == PromptVariant::kIntervalType) {
    rows = kIntervalTypeRows;
    duration = kDurationInterval;
    columns = kColumnsIntervalType;
  }

  std::string text;
  if (variant != PromptVariant::kNoRole) text += kRole;
  text += kInstructions;
  if (variant != PromptVariant::kZeroShot) text += example_block(rows);
  if (variant != PromptVariant::kNoExpansion) text += kExpansion;
  text += duration;
  text += kSpanRules;
  text += columns;
  text += kClosing;
  text += case_text;

  ChatRequest request;
  request.user_text = std::move(text);
  return request;
}

ChatRequest build_category_prompt(std::string_view event_text) {
  require_text(event_text, "event text");
  std::string text(kCategory);
  constexpr std::string_view kSlot = "{event_text}";
  text.replace(text.find(kSlot), kSlot.size(), event_text);
  ChatRequest request;
  request.user_text = std::move(text);
  return request;
}

ChatRequest build_demographics_prompt(std::string_view case_text) {
  require_text(case_text, "case text");
  ChatRequest request;
  request.user_text = std::string(kDemographics) + std::string(case_text);
  return request;
}

namespace prompt_spans {
std::string_view role() { return kRole; }
std::string_view expansion() { return kExpansion; }
std::string zero_shot_example() { return example_block(kExampleRows); }
std::string_view example_rows() { return kExampleRows; }
}  // namespace prompt_spans

}  // namespace ttseval
