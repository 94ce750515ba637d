/**
 * Interface translations. The English catalog defines the key set; the
 * French catalog is typed against it, so a missing entry is a compile
 * error, not a runtime fallback.
 */

export type Language = "en" | "fr";

const en = {
  title: "Cable robot control",
  page_setup: "Setup",
  page_calibration: "Calibration",
  page_control: "Control",
  lang_label: "Language:",

  block_status: "Current Status",
  block_coords: "Coil coordinates",
  block_trilateration: "Trilateration",
  block_calibration: "Zero the coils",
  block_half_turns: "Coils",
  block_axis: "Per-axis motion",
  block_goto: "Go to coordinates",
  block_saved: "Saved positions",

  status_cable: "Cable",
  status_length: "Length (cm)",
  status_state: "State",
  status_position: "Platform position",
  status_residual: "residual",
  status_not_converged: "lengths are inconsistent, showing best estimate",
  status_save: "Save!",
  status_save_placeholder: "label for this position",
  state_zeroed: "zeroed",
  state_not_zeroed: "not zeroed",
  state_fault: "fault",
  state_jogging: "jogging",

  wind: "Wind",
  unwind: "Unwind",
  stop: "Stop",
  save_zero: "Save",
  inject_fault: "Fault",
  clear_fault: "Clear",
  calibration_hint:
    "Wind or unwind each cable until its 100 cm mark, press Stop, then Save the zero.",

  half_turn_hint: "One press winds or unwinds about 3.5 cm of cable.",
  axis_hint: "Each button moves the platform by 5 cm.",

  goto_x: "x (cm)",
  goto_y: "y (cm)",
  goto_z: "z (cm)",
  goto_relative: "shift by this vector (instead of absolute)",
  goto_go: "Go",
  goto_invalid: "Enter numeric coordinates first",

  saved_goto: "Go",
  saved_delete: "Delete",
  saved_empty: "Nothing saved yet; use Save! in the status block.",

  tri_hint:
    "Measure the six distances between the coils, enter the coil height, then solve and save.",
  tri_plane_height: "coil height (cm)",
  tri_solve: "Solve",
  tri_commit: "Save",
  tri_residual: "consistency residual",
  tri_invalid: "Enter all six distances and the coil height",
  tri_pending: "Solution (not saved yet)",

  coords_coil: "Coil",
  lang_save_default: "Use this language by default",
  lang_saved: "Default language saved",

  banner_disconnected: "Cannot reach the robot service; controls are disabled.",

  err_busy: "Robot busy, try again",
  err_not_zeroed: "Calibrate first: every coil must be zeroed",
  err_faulted: "A coil is in fault state",
  err_out_of_workspace: "Target is outside the coil-delimited workspace",
  err_out_of_range: "That would wind the cable past its end",
  err_already_jogging: "That coil is already jogging",
  err_not_jogging: "That coil is not jogging",
  err_inconsistent_distances: "These distances cannot form a coil layout",
  err_degenerate_layout: "The layout is degenerate, check the distances",
  err_unknown_id: "That saved position no longer exists",
  err_nothing_to_commit: "Solve the trilateration first",
  err_cap_exceeded: "Order is too large for a single command",
  err_singular_geometry: "Coil layout is singular",
  err_not_converged: "No position fits these lengths",
  err_bad_request: "The service rejected the request",
  err_bad_config: "The configuration was rejected",
  err_not_found: "Unknown resource",
  err_method_not_allowed: "Unsupported operation",
  err_internal: "Service error",
} as const;

export type MessageKey = keyof typeof en;

const fr: Record<MessageKey, string> = {
  title: "Commande du robot à câbles",
  page_setup: "Configuration",
  page_calibration: "Calibration",
  page_control: "Contrôle",
  lang_label: "Langue :",

  block_status: "État actuel",
  block_coords: "Coordonnées des bobines",
  block_trilateration: "Trilatération",
  block_calibration: "Mise à zéro des bobines",
  block_half_turns: "Bobines",
  block_axis: "Déplacement par axe",
  block_goto: "Aller aux coordonnées",
  block_saved: "Positions enregistrées",

  status_cable: "Câble",
  status_length: "Longueur (cm)",
  status_state: "État",
  status_position: "Position de la plateforme",
  status_residual: "résidu",
  status_not_converged:
    "longueurs incohérentes, meilleure estimation affichée",
  status_save: "Enregistrer !",
  status_save_placeholder: "nom de cette position",
  state_zeroed: "à zéro",
  state_not_zeroed: "pas encore à zéro",
  state_fault: "défaut",
  state_jogging: "en rotation",

  wind: "Enrouler",
  unwind: "Dérouler",
  stop: "Stop",
  save_zero: "Enregistrer",
  inject_fault: "Défaut",
  clear_fault: "Effacer",
  calibration_hint:
    "Enroulez ou déroulez chaque câble jusqu'à son repère de 100 cm, appuyez sur Stop, puis enregistrez le zéro.",

  half_turn_hint: "Chaque appui enroule ou déroule environ 3,5 cm de câble.",
  axis_hint: "Chaque bouton déplace la plateforme de 5 cm.",

  goto_x: "x (cm)",
  goto_y: "y (cm)",
  goto_z: "z (cm)",
  goto_relative: "décaler de ce vecteur (au lieu d'une position absolue)",
  goto_go: "Aller",
  goto_invalid: "Saisissez d'abord des coordonnées numériques",

  saved_goto: "Aller",
  saved_delete: "Supprimer",
  saved_empty:
    "Rien d'enregistré ; utilisez Enregistrer ! dans le bloc d'état.",

  tri_hint:
    "Mesurez les six distances entre les bobines, saisissez leur hauteur, puis résolvez et enregistrez.",
  tri_plane_height: "hauteur des bobines (cm)",
  tri_solve: "Résoudre",
  tri_commit: "Enregistrer",
  tri_residual: "résidu de cohérence",
  tri_invalid: "Saisissez les six distances et la hauteur des bobines",
  tri_pending: "Solution (pas encore enregistrée)",

  coords_coil: "Bobine",
  lang_save_default: "Utiliser cette langue par défaut",
  lang_saved: "Langue par défaut enregistrée",

  banner_disconnected:
    "Service du robot injoignable ; commandes désactivées.",

  err_busy: "Robot occupé, réessayez",
  err_not_zeroed: "Calibrez d'abord : chaque bobine doit être à zéro",
  err_faulted: "Une bobine est en défaut",
  err_out_of_workspace: "Cible hors de l'espace délimité par les bobines",
  err_out_of_range: "Cela enroulerait le câble au-delà de sa fin",
  err_already_jogging: "Cette bobine tourne déjà",
  err_not_jogging: "Cette bobine ne tourne pas",
  err_inconsistent_distances:
    "Ces distances ne forment pas une disposition de bobines",
  err_degenerate_layout: "Disposition dégénérée, vérifiez les distances",
  err_unknown_id: "Cette position enregistrée n'existe plus",
  err_nothing_to_commit: "Résolvez d'abord la trilatération",
  err_cap_exceeded: "Ordre trop grand pour une seule commande",
  err_singular_geometry: "Disposition des bobines singulière",
  err_not_converged: "Aucune position ne correspond à ces longueurs",
  err_bad_request: "Le service a rejeté la requête",
  err_bad_config: "La configuration a été rejetée",
  err_not_found: "Ressource inconnue",
  err_method_not_allowed: "Opération non prise en charge",
  err_internal: "Erreur du service",
};

export const CATALOGS: Record<Language, Record<MessageKey, string>> = { en, fr };

export function translate(key: MessageKey, lang: Language): string {
  return CATALOGS[lang][key];
}

/** Message key for a server error code; falls back to the generic one. */
export function errorKeyFor(code: string): MessageKey {
  const key = `err_${code}`;
  return key in en ? (key as MessageKey) : "err_internal";
}
