"""The command center's fixed strings.

Two catalogs exist because the plain command center and the
assistant-enabled one word things differently (including the plain one's
"Sorry, I can't understand:" prefix and the assistant's "1 errors" count
line, both preserved verbatim from the product they mimic).
"""

from __future__ import annotations

EXEC_OK_PLAIN = "The command was executed successfully."
EXEC_OK_ASSISTANT = "Successfully executed the code."
CANT_UNDERSTAND = "Sorry, I can't understand: {message}"
ERRORS_REMAIN = "Sorry, there are still {count} errors in the code snippet."
RUN_BLOCKED = (
    "Sorry, but we need to fix the {count} errors in the code "
    "(marked with red squiggly lines) before continuing."
)
TRYING_TO_RUN = "Trying to run the code..."
RUNTIME_FAILED = "Sorry, the code stopped with an error: {message}"

OPTION_FIX = "Help me fix this code"
OPTION_EXPLAIN = "Explain the error"
OPTION_CLARIFY = "Let me clarify it"
OPTION_CHANGE_TOPIC = "Let's change a topic"

CLARIFY_HEADER = (
    "It seems that you have several different needs. Let's do one at a time. "
    "Which one do you want to start with?"
)
WORKING_ON = "Working on: {intent}"
SLOT_INTRO = "Sure, I can help you with that. Can you please provide me with more information?"
SUMMARY_HEADER = "Below is a summary of my request:"

DRAFT_WORKING = "I am working on a first version of the code."
DRAFT_DISCLAIMER = "The code might have mistakes."
FIX_WORKING = "Sure, I am working on the fixed code."
FIX_DISCLAIMER = "Note that the code can still have mistakes."
EDIT_WORKING = "Sure, I am working on the new version of the code."

CHANGE_TOPIC_ACK = "Okay - what would you like to do next?"
CLARIFY_MORE = "Sure - tell me more about what you want to build."
EMPTY_PROMPT = "Tell me what you would like to build, or try a command like create-turtles 100."
PLAIN_NO_CHAT = (
    "Sorry, I can't understand: please enter a command, "
    "or help followed by a primitive name."
)
NO_HELP_ENTRY = "No help entry for {name}."
CHOOSE_OFFERED = "Please choose one of the offered options."
NOTHING_TO_RUN = "There is no code draft to run yet."
NOTHING_TO_EDIT = "There is no code draft to edit yet - tell me what you would like to build."
NO_CODE_IN_REPLY = "Sorry, I couldn't come up with code for that. Could you say it differently?"
STILL_WORKING = "I'm still working on the code..."
BACKEND_FAILED = "Sorry, the assistant isn't reachable right now. Your command center still works."
