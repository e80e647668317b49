from packetforge.commands.critical_command import AppendixCommand, CriticalCommand, VerifyAllCommand
from packetforge.commands.family_command import FamilyCommand
from packetforge.commands.hopf_command import MstarCommand, MustarCommand
from packetforge.commands.packet_command import DualCommand, JacCommand, PacketCommand

COMMANDS = {
    cls.name: cls
    for cls in (
        MstarCommand,
        MustarCommand,
        JacCommand,
        PacketCommand,
        DualCommand,
        FamilyCommand,
        CriticalCommand,
        AppendixCommand,
        VerifyAllCommand,
    )
}
