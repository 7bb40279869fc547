"""Reserved texts and shared limits.

The two student-facing strings below are load-bearing: graders, renderers
and the UI all compare against them byte-for-byte, so they must never be
reworded casually.
"""

AI_DISCLAIMER = (
    "These questions were generated by AI. Therefore, questions generated may "
    "be incorrect. If you think they are incorrect please select 'This "
    "question doesn't seem right'. Also, select this option if the question "
    "doesn't relate to programming."
)

FLAG_OPTION_TEXT = "This question doesn't seem right"

# Wire encoding of a flag answer in an answer sheet.
FLAG_ANSWER = -1

MIN_QUESTIONS = 1
MAX_QUESTIONS = 10

MIN_OPTIONS = 2
MAX_OPTIONS = 6

# How many options the generator is asked to produce (one correct answer
# plus three distractors).
REQUESTED_OPTION_COUNT = 4

DEFAULT_ALLOWED_LANGUAGES = (
    "c",
    "cpp",
    "csharp",
    "java",
    "javascript",
    "python",
    "typescript",
)
