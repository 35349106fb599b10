/** Bundled UI strings for the four supported languages, plus the
 * locale-independent symbolic labels used by the symbolic block mode
 * (pre-readers get pictures, not words). */

import { BlockKind } from "./blocks.js";

export type Lang = "it" | "fr" | "de" | "en";

export const LANGS: readonly Lang[] = ["it", "fr", "de", "en"];

type Strings = Record<string, string>;

export const STRINGS: Record<Lang, Strings> = {
  en: {
    reference: "Reference",
    colouring: "Your colouring",
    feedback_on: "Feedback on",
    feedback_off: "Feedback off",
    retry: "Retry",
    surrender: "Skip",
    confirm: "Confirm",
    next: "Next",
    previous: "Previous",
    score: "Score",
    dashboard: "Your results",
    survey_title: "How was it?",
    gesture_mode: "Touch",
    block_mode: "Blocks",
    goCell: "go to dot",
    go: "move",
    paintSingleCell: "paint dot",
    paintPattern: "paint pattern",
    paintMultipleCells: "paint dots",
    fillEmpty: "fill the rest",
    repeatCommands: "repeat at",
    copyCells: "copy dots",
    mirrorBoard: "mirror board",
    mirrorCells: "mirror dots",
    mirrorCommands: "mirror commands",
  },
  it: {
    reference: "Schema di riferimento",
    colouring: "La tua colorazione",
    feedback_on: "Feedback attivo",
    feedback_off: "Feedback disattivato",
    retry: "Riprova",
    surrender: "Salta",
    confirm: "Conferma",
    next: "Avanti",
    previous: "Indietro",
    score: "Punteggio",
    dashboard: "I tuoi risultati",
    survey_title: "Com'è andata?",
    gesture_mode: "Tocco",
    block_mode: "Blocchi",
    goCell: "vai al punto",
    go: "muoviti",
    paintSingleCell: "colora il punto",
    paintPattern: "colora un motivo",
    paintMultipleCells: "colora i punti",
    fillEmpty: "riempi il resto",
    repeatCommands: "ripeti su",
    copyCells: "copia i punti",
    mirrorBoard: "specchia la croce",
    mirrorCells: "specchia i punti",
    mirrorCommands: "specchia i comandi",
  },
  fr: {
    reference: "Schéma de référence",
    colouring: "Ton coloriage",
    feedback_on: "Retour visuel activé",
    feedback_off: "Retour visuel désactivé",
    retry: "Réessayer",
    surrender: "Passer",
    confirm: "Confirmer",
    next: "Suivant",
    previous: "Précédent",
    score: "Score",
    dashboard: "Tes résultats",
    survey_title: "C'était comment ?",
    gesture_mode: "Toucher",
    block_mode: "Blocs",
    goCell: "aller au point",
    go: "se déplacer",
    paintSingleCell: "colorier le point",
    paintPattern: "colorier un motif",
    paintMultipleCells: "colorier des points",
    fillEmpty: "remplir le reste",
    repeatCommands: "répéter sur",
    copyCells: "copier des points",
    mirrorBoard: "refléter la croix",
    mirrorCells: "refléter des points",
    mirrorCommands: "refléter des commandes",
  },
  de: {
    reference: "Vorlage",
    colouring: "Deine Färbung",
    feedback_on: "Feedback an",
    feedback_off: "Feedback aus",
    retry: "Nochmal",
    surrender: "Überspringen",
    confirm: "Bestätigen",
    next: "Weiter",
    previous: "Zurück",
    score: "Punkte",
    dashboard: "Deine Ergebnisse",
    survey_title: "Wie war es?",
    gesture_mode: "Tippen",
    block_mode: "Blöcke",
    goCell: "zum Punkt gehen",
    go: "bewegen",
    paintSingleCell: "Punkt färben",
    paintPattern: "Muster färben",
    paintMultipleCells: "Punkte färben",
    fillEmpty: "Rest füllen",
    repeatCommands: "wiederholen bei",
    copyCells: "Punkte kopieren",
    mirrorBoard: "Kreuz spiegeln",
    mirrorCells: "Punkte spiegeln",
    mirrorCommands: "Befehle spiegeln",
  },
};

/** Symbolic block labels: the same in every language. */
export const SYMBOLS: Record<BlockKind, string> = {
  goCell: "📍",
  go: "➡",
  paintSingleCell: "🖌",
  paintPattern: "🖌🖌🖌",
  paintMultipleCells: "🖌…🖌",
  fillEmpty: "🪣",
  repeatCommands: "🔁",
  copyCells: "⧉",
  mirrorBoard: "🪞",
  mirrorCells: "🪞·",
  mirrorCommands: "🪞{}",
};

export function labelFor(kind: BlockKind, lang: Lang, symbolic: boolean): string {
  if (symbolic) return SYMBOLS[kind];
  return STRINGS[lang][kind] ?? kind;
}
